"""HTTP service exposing the analyses over JSON.

Each endpoint takes the graph as text in the request body (the same
three-line format the CLI reads from files) and returns the structured form
of the corresponding report.  Run with `gpauto serve` or
`uvicorn gpauto.service:app`.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import reports
from .graphs import parse_graph

app = FastAPI(
    title="gpauto",
    description="automorphism calculus for graph products of directly-indecomposable cyclic groups",
    version="0.1.0",
)


class GraphRequest(BaseModel):
    graph: str = Field(description="labeled graph in the three-line text format")


class WordRequest(GraphRequest):
    word: str = Field(description="word, e.g. 'v3 v6^-1 v3^2'; empty for the identity")


class ApplyRequest(GraphRequest):
    autword: str = Field(description="partial-conjugation letters, e.g. 'x2:8,15,16'")
    word: str | None = None


class ClassifyRequest(GraphRequest):
    a: str
    b: str


class ExtensionsRequest(GraphRequest):
    max_aut_n: int = 12


class EnumerateRequest(BaseModel):
    check: str
    max_n: int = 5
    seed: int = 0


class LettersResponse(BaseModel):
    letters: list[str]


class ReduceResponse(BaseModel):
    normal_form: str
    syllables: int


class ClassifyResponse(BaseModel):
    a: str
    b: str
    case: int
    predicted_commute: bool
    verified_commute: bool


class VcdResponse(BaseModel):
    vcd: int | None


class HyperbolicResponse(BaseModel):
    aut_w_hyperbolic: bool | None


def _graph(req: GraphRequest):
    try:
        return parse_graph(req.graph)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def _run(fn, *args):
    try:
        return fn(*args)
    except (ValueError, AssertionError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


@app.get("/")
def root() -> dict:
    return {
        "service": "gpauto",
        "endpoints": [
            "/info", "/pcs", "/pc0", "/lsets", "/reduce", "/apply", "/classify",
            "/sil", "/structure", "/tree", "/vcd", "/hyperbolic", "/extensions",
            "/enumerate",
        ],
    }


@app.post("/info")
def info(req: GraphRequest) -> dict:
    return _run(reports.info_report, _graph(req))


@app.post("/pcs", response_model=LettersResponse)
def pcs(req: GraphRequest):
    return _run(reports.pcs_report, _graph(req))


@app.post("/pc0", response_model=LettersResponse)
def pc0(req: GraphRequest):
    return _run(reports.pc0_report, _graph(req))


@app.post("/lsets")
def lsets(req: GraphRequest) -> dict:
    return _run(reports.lsets_report, _graph(req))


@app.post("/reduce", response_model=ReduceResponse)
def reduce(req: WordRequest):
    return _run(reports.reduce_report, _graph(req), req.word)


@app.post("/apply")
def apply(req: ApplyRequest) -> dict:
    return _run(reports.apply_report, _graph(req), req.autword, req.word)


@app.post("/classify", response_model=ClassifyResponse)
def classify(req: ClassifyRequest):
    return _run(reports.classify_report, _graph(req), req.a, req.b)


@app.post("/sil")
def sil(req: GraphRequest) -> dict:
    return _run(reports.sil_report, _graph(req))


@app.post("/structure")
def structure(req: GraphRequest) -> dict:
    return _run(reports.structure_report, _graph(req))


@app.post("/tree")
def tree(req: GraphRequest) -> dict:
    return _run(reports.tree_report, _graph(req))


@app.post("/vcd", response_model=VcdResponse)
def vcd(req: GraphRequest):
    return _run(reports.vcd_report, _graph(req))


@app.post("/hyperbolic", response_model=HyperbolicResponse)
def hyperbolic(req: GraphRequest):
    return _run(reports.hyperbolic_report, _graph(req))


@app.post("/extensions")
def extensions(req: ExtensionsRequest) -> dict:
    return _run(reports.extensions_report, _graph(req), req.max_aut_n)


@app.post("/enumerate")
def enumerate_checks(req: EnumerateRequest) -> dict:
    return _run(reports.enumerate_report, req.check, req.max_n, req.seed)
