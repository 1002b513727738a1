"""JSON file formats and the deterministic label naming used by the CLI.

Graph:    {"vertices": ["a", ...], "edges": [["a", "b"], ...]}
Complex:  {"vertices": ["0", ...], "facets": [["0", "1", "2"], ...]}
Square:   {"G": g, "H": g, "K": g, "L": g,
           "top": {..}, "left": {..}, "right": {..}, "bottom": {..}}
          where each g is an inline graph or a path to a graph file and the
          four maps are label -> label objects (top: G->H, left: G->K,
          right: H->L, bottom: K->L).
Cylinder: {"A": g, "B": g, "C": g, "f": {..}, "g": {..}}

Loops are implicit and may not appear in a graph file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .fseq import FSequence
from .gamma import SimplicialComplex
from .graph import Graph, GraphMap, GraphSquare, Label


class FormatError(ValueError):
    """A malformed input file."""


def label_str(v: Label) -> str:
    """Deterministic text name of a vertex label.

    Strings pass through and integers print in decimal.  F-sequences use
    their usual syntax, None (a free cube coordinate) prints as "*" and
    tuples become "(x,y,...)" recursively.  A tuple tagged "A", "B" or "C"
    (cylinder labels) prints as "tag:rest".
    """
    if isinstance(v, str):
        return v
    if v is None:
        return "*"
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, FSequence):
        return str(v)
    if isinstance(v, tuple):
        if len(v) >= 2 and v[0] in ("A", "B", "C") and isinstance(v[0], str):
            return v[0] + ":" + ",".join(label_str(x) for x in v[1:])
        return "(" + ",".join(label_str(x) for x in v) + ")"
    return str(v)


def stringify(G: Graph) -> Graph:
    """G with every label replaced by label_str; raises if two names collide."""
    names = [label_str(v) for v in G.vertices]
    if len(set(names)) != len(names):
        raise ValueError("label naming is not injective on this graph")
    return Graph.from_adjacency(names, [G.nbr_idx(i) for i in range(len(G))])


def graph_to_json(G: Graph) -> dict:
    S = stringify(G)
    return {"vertices": list(S.vertices), "edges": [list(e) for e in S.edges()]}


def dumps_graph(G: Graph) -> str:
    return json.dumps(graph_to_json(G), separators=(",", ":")) + "\n"


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise FormatError(msg)


def graph_from_json(data: Any) -> Graph:
    _require(isinstance(data, dict), "graph must be a JSON object")
    _require(set(data) <= {"vertices", "edges"} and "vertices" in data,
             "graph needs a 'vertices' list and an optional 'edges' list")
    verts = data["vertices"]
    edges = data.get("edges", [])
    _require(isinstance(verts, list) and all(isinstance(v, str) for v in verts),
             "'vertices' must be a list of strings")
    _require(len(set(verts)) == len(verts), "duplicate vertex in 'vertices'")
    _require(isinstance(edges, list), "'edges' must be a list")
    known = set(verts)
    for e in edges:
        _require(isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e),
                 f"edge {e!r} must be a pair of strings")
        _require(e[0] in known and e[1] in known, f"edge {e!r} uses an unknown vertex")
        _require(e[0] != e[1], f"edge {e!r} is a loop; loops are implicit")
    return Graph(verts, [tuple(e) for e in edges])


def _load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def load_graph(path: str | Path) -> Graph:
    return graph_from_json(_load_json(path))


def _graph_ref(ref: Any, base: Path) -> Graph:
    if isinstance(ref, str):
        return load_graph(base / ref)
    return graph_from_json(ref)


def _map(data: Any, key: str, S: Graph, T: Graph) -> GraphMap:
    m = data.get(key)
    _require(isinstance(m, dict), f"map '{key}' must be an object")
    _require(set(m) == set(S.vertices), f"map '{key}' must assign every source vertex exactly once")
    for v, w in m.items():
        _require(w in T, f"map '{key}' sends {v!r} to unknown vertex {w!r}")
    try:
        return GraphMap(S, T, m)
    except ValueError as exc:
        raise FormatError(f"map '{key}': {exc}") from None


def load_square(path: str | Path) -> GraphSquare:
    data = _load_json(path)
    _require(isinstance(data, dict), "square must be a JSON object")
    base = Path(path).parent
    for k in ("G", "H", "K", "L"):
        _require(k in data, f"square lacks graph '{k}'")
    G, H, K, L = (_graph_ref(data[k], base) for k in ("G", "H", "K", "L"))
    maps = [_map(data, "top", G, H), _map(data, "left", G, K), _map(data, "right", H, L), _map(data, "bottom", K, L)]
    try:
        return GraphSquare(*maps)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_cylinder_spec(path: str | Path) -> tuple[GraphMap, GraphMap]:
    data = _load_json(path)
    _require(isinstance(data, dict), "cylinder spec must be a JSON object")
    base = Path(path).parent
    for k in ("A", "B", "C"):
        _require(k in data, f"cylinder spec lacks graph '{k}'")
    A, B, C = (_graph_ref(data[k], base) for k in ("A", "B", "C"))
    return _map(data, "f", A, B), _map(data, "g", A, C)


def square_to_json(sq: GraphSquare) -> dict:
    out: dict[str, Any] = {}
    for k, G in zip("GHKL", (sq.top.source, sq.top.target, sq.left.target, sq.bottom.target)):
        out[k] = graph_to_json(G)
    for name in ("top", "left", "right", "bottom"):
        f: GraphMap = getattr(sq, name)
        out[name] = {label_str(v): label_str(f(v)) for v in f.source.vertices}
    return out


def complex_from_json(data: Any) -> SimplicialComplex:
    _require(isinstance(data, dict) and "vertices" in data and "facets" in data,
             "complex needs 'vertices' and 'facets'")
    verts, facets = data["vertices"], data["facets"]
    _require(isinstance(verts, list) and all(isinstance(v, str) for v in verts),
             "'vertices' must be a list of strings")
    _require(isinstance(facets, list) and all(isinstance(f, list) for f in facets), "'facets' must be a list of lists")
    try:
        return SimplicialComplex(verts, facets)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_complex(path: str | Path) -> SimplicialComplex:
    return complex_from_json(_load_json(path))


def complex_to_json(K: SimplicialComplex) -> dict:
    return {"vertices": [label_str(v) for v in K.vertices], "facets": [[label_str(v) for v in f] for f in K.facets()]}


def write_triplets(M, fh) -> None:
    """Sparse matrix dump: a "# rows cols nnz" header, then one "row col value" line per entry."""
    fh.write(f"# {M.nrows} {M.ncols} {M.nnz}\n")
    for i, j, v in M.triplets():
        fh.write(f"{i} {j} {v}\n")


def homology_json(groups: Mapping[int, Any]) -> list[dict]:
    return [g.as_dict(k) for k, g in sorted(groups.items())]
