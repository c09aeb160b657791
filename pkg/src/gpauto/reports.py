"""Report builders shared by the command-line front end and the HTTP
service: every command produces one plain dict (the structured form) and a
deterministic line-oriented text rendering of it.
"""

from __future__ import annotations

import itertools
import random

from . import analysis, autos, graphs, smallgraphs, words
from .graphs import LabeledGraph, format_order


def _fmt_set(s) -> str:
    return ",".join(str(v) for v in sorted(s))


def _letters(pcs) -> list[str]:
    return [str(pc) for pc in pcs]


def info_report(g: LabeledGraph) -> dict:
    pred = graphs.graph_predicates(g)
    return {
        "vertices": g.n,
        "orders": [format_order(o) for o in g.orders[1:]],
        "edges": [f"{a}-{b}" for (a, b) in g.edges],
        "connected": graphs.is_connected(g),
        "tree": graphs.is_tree(g),
        "leaves": sorted(pred.leaves),
        "center_vertices": sorted(pred.center_vertices),
        "four_cycle_chord_ok": pred.four_cycle_chord_ok,
        "girth_ge_5_and_min_valence_2": pred.girth_ge_5_and_min_valence_2,
        "link_containment_pairs": [list(p) for p in pred.link_containment_pairs],
        "star_containment_pairs": [list(p) for p in pred.star_containment_pairs],
        "aut_star_equals_aut": pred.aut_star_equals_aut,
        "maximal_cliques": [sorted(c) for c in graphs.maximal_cliques(g)],
    }


def info_text(rep: dict) -> str:
    lines = [
        f"vertices: {rep['vertices']}",
        f"orders: {' '.join(rep['orders'])}",
        f"edges: {' '.join(rep['edges'])}",
        f"connected: {str(rep['connected']).lower()}",
        f"tree: {str(rep['tree']).lower()}",
        f"leaves: {_fmt_set(rep['leaves'])}",
        f"center_vertices: {_fmt_set(rep['center_vertices'])}",
        f"four_cycle_chord_ok: {str(rep['four_cycle_chord_ok']).lower()}",
        f"girth_ge_5_and_min_valence_2: {str(rep['girth_ge_5_and_min_valence_2']).lower()}",
        f"link_containment_pairs: {' '.join(f'({i},{j})' for i, j in rep['link_containment_pairs'])}",
        f"star_containment_pairs: {' '.join(f'({i},{j})' for i, j in rep['star_containment_pairs'])}",
        f"aut_star_equals_aut: {rep['aut_star_equals_aut']}",
        f"maximal_cliques: {' '.join('{' + _fmt_set(c) + '}' for c in rep['maximal_cliques'])}",
    ]
    return "\n".join(lines) + "\n"


def pcs_report(g: LabeledGraph) -> dict:
    return {"letters": _letters(autos.all_partial_conjugations(g))}


def pc0_report(g: LabeledGraph) -> dict:
    return {"letters": _letters(autos.pc_zero(g))}


def letters_text(rep: dict) -> str:
    return "".join(line + "\n" for line in rep["letters"])


def lsets_report(g: LabeledGraph) -> dict:
    return {
        "lsets": {str(i): _letters(autos.l_set(g, i)) for i in g.vertices()}
    }


def lsets_text(rep: dict) -> str:
    lines = []
    for i, letters in rep["lsets"].items():
        lines.append(f"L{i}:" + (" " + " ".join(letters) if letters else ""))
    return "\n".join(lines) + "\n"


def reduce_report(g: LabeledGraph, word_text: str) -> dict:
    nf = words.normal_form(g, words.parse_word(word_text))
    return {"normal_form": words.format_word(nf), "syllables": len(nf)}


def reduce_text(rep: dict) -> str:
    return rep["normal_form"] + "\n"


def apply_report(g: LabeledGraph, autword_text: str, word_text=None) -> dict:
    letters = autos.parse_autword(g, autword_text)
    phi = autos.evaluate(g, letters)
    out = {
        "images": {
            str(j): words.format_word(phi.image(j)) for j in g.vertices()
        },
        "is_identity": phi.is_identity(),
    }
    if word_text is not None:
        out["word_image"] = words.format_word(phi.apply(words.parse_word(word_text)))
    witness = autos.find_inner_witness(g, phi)
    out["inner_witness"] = words.format_word(witness) if witness is not None else None
    return out


def apply_text(rep: dict) -> str:
    lines = []
    if "word_image" in rep:
        lines.append(f"word_image: {rep['word_image']}")
    for j, img in rep["images"].items():
        lines.append(f"v{j} -> {img}")
    lines.append(f"is_identity: {str(rep['is_identity']).lower()}")
    w = rep["inner_witness"]
    if w is None:
        lines.append("inner_witness: none")
    else:
        lines.append(f"inner_witness: {w if w else '(identity)'}")
    return "\n".join(lines) + "\n"


def classify_report(g: LabeledGraph, a_text: str, b_text: str) -> dict:
    (a, ea), = autos.parse_autword(g, a_text)
    (b, eb), = autos.parse_autword(g, b_text)
    if ea != 1 or eb != 1:
        raise ValueError("classification takes plain letters, not inverses")
    case = analysis.classify_pair(g, a, b)
    return {
        "a": str(a),
        "b": str(b),
        "case": case.number,
        "predicted_commute": case.predicted_commute,
        "verified_commute": analysis.verify_pair_commutation(g, a, b),
    }


def classify_text(rep: dict) -> str:
    return (
        f"case: {rep['case']}\n"
        f"predicted_commute: {str(rep['predicted_commute']).lower()}\n"
        f"verified_commute: {str(rep['verified_commute']).lower()}\n"
    )


def _sil_dict(sil):
    if sil is None:
        return None
    return {"i": sil.i, "j": sil.j, "r": sorted(sil.r)}


def sil_report(g: LabeledGraph) -> dict:
    return {"sil": _sil_dict(graphs.find_sil(g))}


def sil_text(rep: dict) -> str:
    s = rep["sil"]
    if s is None:
        return "sil: none\n"
    return f"sil: i={s['i']} j={s['j']} r={_fmt_set(s['r'])}\n"


def _tree_dict(td: analysis.TreeDecomposition) -> dict:
    vertices = []
    for i in sorted(td.link_sets):
        case = td.per_vertex_case[i]
        vertices.append(
            {
                "i": i,
                "link": list(td.link_sets[i]),
                "l0": [str(pc) for pc in td.l0_partition[i]],
                "cyclic_order": None
                if case.cyclic_order is None
                else format_order(case.cyclic_order),
                "out_link_trivial": case.out_link_trivial,
            }
        )
    return {
        "ab_factor": [format_order(o) for o in td.ab_factor],
        "ab_kind": td.ab_kind,
        "vertices": vertices,
    }


def tree_report(g: LabeledGraph) -> dict:
    return {"tree": _tree_dict(analysis.tree_decomposition(g))}


def _tree_lines(tree: dict) -> list[str]:
    lines = [
        "tree: Out0W = Ab x prod_i Out0W(L_i)",
        "ab_kind: " + tree["ab_kind"],
        "ab_factor: "
        + (" x ".join(f"Z_{o}" for o in tree["ab_factor"]) if tree["ab_factor"] else "1"),
    ]
    for v in tree["vertices"]:
        i = v["i"]
        shape = f"Out0W(L_{i})"
        if v["cyclic_order"] is not None:
            shape = f"Z_{v['cyclic_order']} x " + shape
            if v["out_link_trivial"]:
                shape += f" = Z_{v['cyclic_order']}"
        elif v["out_link_trivial"]:
            shape += " = 1"
        letters = " ".join(v["l0"]) if v["l0"] else "(empty)"
        lines.append(f"L0_{i}: {letters} ~ {shape}")
    return lines


def tree_text(rep: dict) -> str:
    return "\n".join(_tree_lines(rep["tree"])) + "\n"


def vcd_report(g: LabeledGraph) -> dict:
    return {"vcd": analysis.vcd_out(g)}


def vcd_text(rep: dict) -> str:
    v = rep["vcd"]
    if v is None:
        return "vcd: undefined (requires a tree with all orders finite)\n"
    return f"vcd: {v}\n"


def hyperbolic_report(g: LabeledGraph) -> dict:
    return {"aut_w_hyperbolic": analysis.aut_w_hyperbolic(g)}


def hyperbolic_text(rep: dict) -> str:
    v = rep["aut_w_hyperbolic"]
    if v is None:
        return "aut_w_hyperbolic: undefined (infinite vertex order present)\n"
    return f"aut_w_hyperbolic: {str(v).lower()}\n"


def extensions_report(g: LabeledGraph, aut_bound: int = 12) -> dict:
    rep = analysis.extension_splitting_check(g, aut_bound=aut_bound)
    return {
        "basis": rep.basis,
        "cond_no_center": rep.cond_no_center,
        "cond_symmetries_fix_classes": rep.cond_symmetries_fix_classes,
        "cond_star_containment": rep.cond_star_containment,
        "verdict": rep.verdict,
    }


def extensions_text(rep: dict) -> str:
    return (
        f"basis: {rep['basis']}\n"
        f"cond_no_center: {str(rep['cond_no_center']).lower()}\n"
        f"cond_symmetries_fix_classes: {_tri(rep['cond_symmetries_fix_classes'])}\n"
        f"cond_star_containment: {str(rep['cond_star_containment']).lower()}\n"
        f"verdict: {rep['verdict']}\n"
    )


def structure_report(g: LabeledGraph, aut_bound: int = 12) -> dict:
    rep = analysis.structure_report(g, aut_bound=aut_bound)
    out = {
        "coned": rep.coned,
        "sil": _sil_dict(rep.sil),
        "out0_abelian": rep.out0_abelian,
        "witness_pair": None
        if rep.witness_pair is None
        else [str(rep.witness_pair[0]), str(rep.witness_pair[1])],
        "out_w_finite": rep.out_w_finite,
        "aut_w_hyperbolic": rep.aut_w_hyperbolic,
        "vcd": rep.vcd,
        "extension": {
            "basis": rep.extension.basis,
            "cond_no_center": rep.extension.cond_no_center,
            "cond_symmetries_fix_classes": rep.extension.cond_symmetries_fix_classes,
            "cond_star_containment": rep.extension.cond_star_containment,
            "verdict": rep.extension.verdict,
        },
        "tree": None if rep.tree is None else _tree_dict(rep.tree),
    }
    return out


def _tri(v) -> str:
    return "unknown" if v is None else str(v).lower()


def structure_text(rep: dict) -> str:
    lines = [
        f"coned: {str(rep['coned']).lower()}",
    ]
    s = rep["sil"]
    lines.append("sil: none" if s is None else f"sil: i={s['i']} j={s['j']} r={_fmt_set(s['r'])}")
    lines.append(f"out0_abelian: {str(rep['out0_abelian']).lower()}")
    wp = rep["witness_pair"]
    lines.append("witness_pair: none" if wp is None else f"witness_pair: {wp[0]} {wp[1]}")
    lines.append(f"out_w_finite: {_tri(rep['out_w_finite'])}")
    lines.append(f"aut_w_hyperbolic: {_tri(rep['aut_w_hyperbolic'])}")
    lines.append(f"vcd: {'undefined' if rep['vcd'] is None else rep['vcd']}")
    ext = rep["extension"]
    lines.append(f"extension_basis: {ext['basis']}")
    lines.append(f"extension_cond_no_center: {str(ext['cond_no_center']).lower()}")
    lines.append(
        f"extension_cond_symmetries_fix_classes: {_tri(ext['cond_symmetries_fix_classes'])}"
    )
    lines.append(
        f"extension_cond_star_containment: {str(ext['cond_star_containment']).lower()}"
    )
    lines.append(f"extension_verdict: {ext['verdict']}")
    if rep["tree"] is not None:
        lines.extend(_tree_lines(rep["tree"]))
    return "\n".join(lines) + "\n"


# --- exhaustive / randomized verification checks for the enumerate command


def _check_lemma62(max_n: int, rng) -> dict:
    pairs = mismatches = 0
    reps = smallgraphs.connected_representatives(min(max_n, 7))
    for g in reps:
        pcs = autos.all_partial_conjugations(g)
        for a in pcs:
            for b in pcs:
                pairs += 1
                case = analysis.classify_pair(g, a, b)
                if case.predicted_commute != analysis.verify_pair_commutation(g, a, b):
                    mismatches += 1
    return {"graphs": len(reps), "pairs": pairs, "failures": mismatches}


def _check_case13(max_n: int, rng) -> dict:
    graphs_seen = pairs = hits = 0
    for n in range(1, max_n + 1):
        for g in smallgraphs.all_labeled_connected_graphs(n):
            graphs_seen += 1
            p0 = autos.pc_zero(g)
            for a, b in itertools.combinations(p0, 2):
                pairs += 1
                if analysis.classify_pair(g, a, b).number == 13:
                    hits += 1
    return {"graphs": graphs_seen, "pairs": pairs, "failures": hits}


def _check_sil_abelian(max_n: int, rng) -> dict:
    graphs_seen = failures = 0
    for n in range(1, max_n + 1):
        for g in smallgraphs.all_labeled_connected_graphs(n):
            graphs_seen += 1
            p0 = autos.pc_zero(g)
            all_commute = all(
                analysis.classify_pair(g, a, b).predicted_commute
                for a, b in itertools.combinations(p0, 2)
            )
            if (graphs.find_sil(g) is None) != all_commute:
                failures += 1
    return {"graphs": graphs_seen, "failures": failures}


def _check_coincidence(max_n: int, rng) -> dict:
    graphs_seen = triples = 0
    for n in range(1, max_n + 1):
        for g in smallgraphs.all_labeled_connected_graphs(n):
            graphs_seen += 1
            for i in g.vertices():
                for j in range(i + 1, g.n + 1):
                    if g.distance(i, j) < 2:
                        continue
                    for r in graphs.components_minus_star(g, i):
                        analysis.component_coincidence(g, i, j, r)  # asserts agreement
                        triples += 1
    return {"graphs": graphs_seen, "triples": triples, "failures": 0}


def _check_cover(max_n: int, rng) -> dict:
    graphs_seen = pairs = 0
    for n in range(1, max_n + 1):
        for g in smallgraphs.all_labeled_connected_graphs(n):
            if graphs.find_sil(g) is not None:
                continue
            graphs_seen += 1
            for i in g.vertices():
                for j in range(i + 1, g.n + 1):
                    if g.distance(i, j) == 2:
                        analysis.sil_cover_check(g, i, j)  # asserts the covering
                        pairs += 1
    return {"graphs": graphs_seen, "pairs": pairs, "failures": 0}


def _check_pc0(max_n: int, rng) -> dict:
    graphs_seen = failures = 0
    for n in range(1, max_n + 1):
        for g in smallgraphs.all_labeled_connected_graphs(n):
            graphs_seen += 1
            pcs = autos.all_partial_conjugations(g)
            p0 = autos.pc_zero(g)
            active = sum(1 for i in g.vertices() if g.star_mask(i) != g.full_mask)
            if len(p0) != len(pcs) - active:
                failures += 1
            for pc in p0:
                k = 0
                while k < g.n and g.distance(k + 1, pc.operator) <= 1:
                    k += 1
                # vertices 1..k are all within distance 1 of the operator,
                # so k+1 must be outside the domain
                if k < g.n and (k + 1) in pc.domain_key:
                    failures += 1
    return {"graphs": graphs_seen, "failures": failures}


def _check_vcd(max_n: int, rng, count: int = 200) -> dict:
    failures = 0
    for _ in range(count):
        n = rng.randint(5, max(5, max_n))
        t = smallgraphs.random_tree(rng, n)
        v = analysis.vcd_out(t)  # asserts the two counts agree
        leaves = sum(1 for x in t.vertices() if t.degree(x) == 1)
        if v != leaves - 2:
            failures += 1
    return {"trees": count, "failures": failures}


ENUMERATE_CHECKS = {
    "lemma62": _check_lemma62,
    "case13": _check_case13,
    "sil-abelian": _check_sil_abelian,
    "coincidence": _check_coincidence,
    "cover": _check_cover,
    "pc0-props": _check_pc0,
    "vcd-trees": _check_vcd,
}


def enumerate_report(check: str, max_n: int, seed: int = 0) -> dict:
    if check not in ENUMERATE_CHECKS:
        raise ValueError(
            f"unknown check {check!r}; choose from {', '.join(sorted(ENUMERATE_CHECKS))}"
        )
    rng = random.Random(seed)
    stats = ENUMERATE_CHECKS[check](max_n, rng)
    out = {"check": check, "max_n": max_n, "seed": seed}
    out.update(stats)
    out["result"] = "pass" if stats.get("failures", 0) == 0 else "fail"
    return out


def enumerate_text(rep: dict) -> str:
    lines = [f"{k}: {v}" for k, v in rep.items()]
    return "\n".join(lines) + "\n"
