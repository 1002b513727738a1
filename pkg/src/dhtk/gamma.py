"""The Gamma^m construction on semicubical sets, and cubification of simplicial complexes.

A vertex of Gamma^m(X) is a pair (u, s): u an n-cube of X and s a vertex of
F(m, n).  A pair whose s lies in the boundary of F(m, n) is identified with a
pair on a face of u; canonical pairs have s of length 0 or with w(1) != 0.
Graph vertex labels are (dim, cube id, reduced FSequence).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from .fseq import FSequence, f_graph, reduce
from .graph import Graph
from .semicube import SemiCubicalSet


def _peel_plan(seq: FSequence) -> tuple[tuple[tuple[int, int], ...], FSequence]:
    """Face operators (applied left to right) and remaining sequence for one boundary peel.

    The leading weight-0 class {x_1 > ... > x_r} becomes the face composite
    d_{x_1,e_1} ... d_{x_r,e_r}; the remaining classes are renumbered onto
    1..n-r preserving order.
    """
    ops: list[tuple[int, int]] = []
    while seq.k and seq.weights[0] == 0:
        first = sorted(seq.classes[0], reverse=True)
        ops.extend((x, seq.signs[x - 1]) for x in first)
        rest = [x for x in range(1, seq.n + 1) if x not in seq.classes[0]]
        renum = {x: i for i, x in enumerate(rest, 1)}
        seq = reduce(FSequence(seq.m, tuple(tuple(renum[x] for x in c) for c in seq.classes[1:]),
                               seq.weights[1:], tuple(seq.signs[x - 1] for x in rest)))
    return tuple(ops), seq


_peel_cached = lru_cache(maxsize=None)(_peel_plan)


def canonicalize(X: SemiCubicalSet, n: int, u: Hashable, seq: FSequence) -> tuple[int, Hashable, FSequence]:
    """The canonical representative of (u, seq), u an n-cube of X."""
    ops, rest = _peel_cached(reduce(seq))
    for x, e in ops:
        u = X.face(n, u, x, e)
        n -= 1
    return n, u, rest


def canonicalize_stepwise(X: SemiCubicalSet, n: int, u: Hashable, seq: FSequence,
                          rng: random.Random | None = None) -> tuple[int, Hashable, FSequence]:
    """Canonicalize by stripping one element of the leading weight-0 class at a time.

    The element to strip is chosen by rng (any element is allowed); used to
    test that the result does not depend on the peeling order.
    """
    seq = reduce(seq)
    while seq.k and seq.weights[0] == 0:
        first = seq.classes[0]
        x = rng.choice(first) if rng is not None else first[0]
        u = X.face(n, u, x, seq.signs[x - 1])
        n -= 1
        rest = [y for y in range(1, seq.n + 1) if y != x]
        renum = {y: i for i, y in enumerate(rest, 1)}
        classes = [tuple(renum[y] for y in c if y != x) for c in seq.classes]
        weights = list(seq.weights)
        if not classes[0]:
            del classes[0], weights[0]
        seq = reduce(FSequence(seq.m, tuple(classes), tuple(weights), tuple(seq.signs[y - 1] for y in rest)))
    return n, u, seq


@dataclass(frozen=True)
class GammaResult:
    graph: Graph
    m: int

    def vertices_over(self, n: int, u: Hashable) -> list:
        return [v for v in self.graph.vertices if v[0] == n and v[1] == u]


def gamma(X: SemiCubicalSet, m: int) -> GammaResult:
    """Gamma^m(X): one copy of the interior of F(m, n) per n-cube, glued along boundaries."""
    labels = []
    for n, cs in enumerate(X.cubes):
        inner = [s for s in f_graph(m, n).vertices if n == 0 or s.weights[0] != 0]
        labels.extend((n, u, s) for u in cs for s in inner)
    pos = {v: i for i, v in enumerate(labels)}
    nbrs: list[set[int]] = [set() for _ in labels]
    for n, cs in enumerate(X.cubes):
        if not cs:
            continue
        F = f_graph(m, n)
        plans = [_peel_cached(s) for s in F.vertices]
        edges = F.edge_idx()
        for u in cs:
            canon = []
            for ops, rest in plans:
                d, v = n, u
                for x, e in ops:
                    v = X.face(d, v, x, e)
                    d -= 1
                canon.append(pos[(d, v, rest)])
            for a, b in edges:
                ca, cb = canon[a], canon[b]
                if ca != cb:
                    nbrs[ca].add(cb)
                    nbrs[cb].add(ca)
    return GammaResult(Graph.from_adjacency(labels, nbrs), m)


def gamma_face_count(X: SemiCubicalSet, m: int) -> int:
    """Predicted vertex count: sum over n of |X_n| times |interior of F(m, n)|."""
    total = 0
    for n, cs in enumerate(X.cubes):
        inner = sum(1 for s in f_graph(m, n).vertices if n == 0 or s.weights[0] != 0)
        total += len(cs) * inner
    return total


# simplicial complexes

class SimplicialComplex:
    """An ordered vertex list and the downward closure of a family of facets.

    Simplices are tuples of vertex labels sorted by the vertex order.
    """

    def __init__(self, vertices: Sequence[Hashable], facets: Iterable[Iterable[Hashable]]):
        self.vertices = tuple(vertices)
        self._order = {v: i for i, v in enumerate(self.vertices)}
        if len(self._order) != len(self.vertices):
            raise ValueError("duplicate vertex")
        simplices: set[tuple] = {(v,) for v in self.vertices}
        for f in facets:
            f = set(f)
            if not f:
                raise ValueError("empty facet")
            unknown = f - set(self._order)
            if unknown:
                raise ValueError(f"facet uses undeclared vertices {sorted(map(str, unknown))}")
            face = self.sort(f)
            for r in range(1, len(face) + 1):
                simplices.update(itertools.combinations(face, r))
        key = lambda s: (len(s), tuple(self._order[v] for v in s))
        self.simplices = tuple(sorted(simplices, key=key))

    def sort(self, vs: Iterable[Hashable]) -> tuple:
        return tuple(sorted(vs, key=self._order.__getitem__))

    def by_dim(self, d: int) -> list[tuple]:
        return [s for s in self.simplices if len(s) == d + 1]

    def f_vector(self) -> tuple[int, ...]:
        top = max((len(s) for s in self.simplices), default=0)
        return tuple(len(self.by_dim(d)) for d in range(top))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector()))

    def facets(self) -> list[tuple]:
        ss = set(self.simplices)
        return [s for s in self.simplices
                if not any(set(s) < set(t) for t in ss if len(t) == len(s) + 1)]


def cubify(K: SimplicialComplex) -> SemiCubicalSet:
    """The cubical set of nested simplex pairs B <= A, B nonempty; dimension |A - B|.

    With A - B = {x_1 < ... < x_n}, face (i, 0) is (A - x_i, B) and face (i, 1)
    is (A, B + x_i).  Cube ids are pairs (A, B) of sorted label tuples.
    """
    if not K.vertices:
        raise ValueError("complex must be nonempty")
    cubes: dict[int, list] = {}
    for A in K.simplices:
        for r in range(1, len(A) + 1):
            for B in itertools.combinations(A, r):
                cubes.setdefault(len(A) - r, []).append((A, B))
    top = max(cubes)
    order = K._order
    cubes_list = []
    faces = []
    for n in range(top + 1):
        cs = sorted(cubes.get(n, []), key=lambda ab: (tuple(order[v] for v in ab[0]), tuple(order[v] for v in ab[1])))
        cubes_list.append(cs)
        table = {}
        if n:
            for A, B in cs:
                diff = [v for v in A if v not in B]
                fs = []
                for x in diff:
                    fs.append((tuple(v for v in A if v != x), B))
                    fs.append((A, K.sort(B + (x,))))
                table[(A, B)] = tuple(fs)
        faces.append(table)
    return SemiCubicalSet(cubes_list, faces)


def gamma_of_complex(K: SimplicialComplex, m: int) -> GammaResult:
    return gamma(cubify(K), m)


def builtin_rp2() -> SimplicialComplex:
    """The 6-vertex real projective plane (antipodal quotient of the icosahedron)."""
    facets = [
        (0, 2, 3), (0, 1, 3), (2, 3, 4), (1, 2, 4), (1, 3, 5),
        (3, 4, 5), (1, 2, 5), (0, 1, 4), (0, 4, 5), (0, 2, 5),
    ]
    verts = [str(i) for i in range(6)]
    return SimplicialComplex(verts, [[str(v) for v in f] for f in facets])


def point_complex() -> SimplicialComplex:
    return SimplicialComplex(["0"], [])
