"""Command-line front end.

Every command reads a labeled graph from a file, runs one analysis from the
core package and prints a deterministic report; `--format structured`
switches to JSON.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import reports


def _add_graph_arg(p):
    p.add_argument("graph", nargs="?", help="path to a .graph file")
    p.add_argument("--graph", dest="graph_opt", metavar="PATH", help="alternative to the positional path")


def _add_format_arg(p):
    p.add_argument("--format", choices=["text", "structured"], default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gpauto",
        description="automorphism calculus for graph products of directly-indecomposable cyclic groups",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    simple = [
        ("info", "graph summary and predicates"),
        ("pcs", "list all partial conjugations"),
        ("pc0", "list the canonical generating set"),
        ("lsets", "list the link-point sets L_i"),
        ("sil", "find a separating intersection of links"),
        ("structure", "full structural report"),
        ("tree", "tree-case decomposition of Out0 W"),
        ("vcd", "virtual cohomological dimension of Out W"),
        ("hyperbolic", "word hyperbolicity of Aut W"),
        ("extensions", "extension-splitting criteria"),
    ]
    for name, help_ in simple:
        p = sub.add_parser(name, help=help_)
        _add_graph_arg(p)
        _add_format_arg(p)
        if name == "extensions":
            p.add_argument("--max-aut-n", type=int, default=12,
                           help="vertex bound for the symmetry search")

    p = sub.add_parser("reduce", help="canonical normal form of a word")
    _add_graph_arg(p)
    p.add_argument("word", help="word, e.g. 'v3 v6^-1 v3^2' (empty = identity)")
    _add_format_arg(p)

    p = sub.add_parser("apply", help="evaluate a partial-conjugation word")
    _add_graph_arg(p)
    p.add_argument("autword", help="letters, e.g. 'x2:8,15,16 x1:4,8,15,16''")
    p.add_argument("word", nargs="?", default=None, help="optional word to push through")
    _add_format_arg(p)

    p = sub.add_parser("classify", help="thirteen-case classification of a letter pair")
    _add_graph_arg(p)
    p.add_argument("a", help="first letter, e.g. 'x6:7,13,14'")
    p.add_argument("b", help="second letter")
    _add_format_arg(p)

    p = sub.add_parser("enumerate", help="exhaustive small-graph verification suites")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", required=True,
                   choices=sorted(reports.ENUMERATE_CHECKS))
    _add_format_arg(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return ap


def _load(args):
    path = args.graph_opt or args.graph
    if not path:
        raise SystemExit(2)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"gpauto: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(2) from None
    from .graphs import parse_graph

    return parse_graph(text)


def _emit(rep: dict, text_renderer, fmt: str):
    if fmt == "structured":
        sys.stdout.write(json.dumps(rep, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(text_renderer(rep))


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "serve":
            import uvicorn

            from .service import app

            uvicorn.run(app, host=args.host, port=args.port)
            return 0
        if args.command == "enumerate":
            rep = reports.enumerate_report(args.check, args.max_n, args.seed)
            _emit(rep, reports.enumerate_text, args.format)
            return 0 if rep["result"] == "pass" else 1
        g = _load(args)
        if args.command == "info":
            _emit(reports.info_report(g), reports.info_text, args.format)
        elif args.command == "pcs":
            _emit(reports.pcs_report(g), reports.letters_text, args.format)
        elif args.command == "pc0":
            _emit(reports.pc0_report(g), reports.letters_text, args.format)
        elif args.command == "lsets":
            _emit(reports.lsets_report(g), reports.lsets_text, args.format)
        elif args.command == "sil":
            _emit(reports.sil_report(g), reports.sil_text, args.format)
        elif args.command == "structure":
            _emit(reports.structure_report(g), reports.structure_text, args.format)
        elif args.command == "tree":
            _emit(reports.tree_report(g), reports.tree_text, args.format)
        elif args.command == "vcd":
            _emit(reports.vcd_report(g), reports.vcd_text, args.format)
        elif args.command == "hyperbolic":
            _emit(reports.hyperbolic_report(g), reports.hyperbolic_text, args.format)
        elif args.command == "extensions":
            _emit(
                reports.extensions_report(g, aut_bound=args.max_aut_n),
                reports.extensions_text,
                args.format,
            )
        elif args.command == "reduce":
            _emit(reports.reduce_report(g, args.word), reports.reduce_text, args.format)
        elif args.command == "apply":
            _emit(
                reports.apply_report(g, args.autword, args.word),
                reports.apply_text,
                args.format,
            )
        elif args.command == "classify":
            _emit(
                reports.classify_report(g, args.a, args.b),
                reports.classify_text,
                args.format,
            )
        else:  # pragma: no cover
            return 2
        return 0
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ValueError, AssertionError) as exc:
        print(f"gpauto: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
