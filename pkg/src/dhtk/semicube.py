"""Semicubical sets: graded cubes with face operators and no degeneracies.

Faces act on the right: face(x, i, eps) is x d_{i,eps}, for 1 <= i <= dim x.
The face identity checked everywhere is

    x d_{i+1,eps} d_{j,eps'} = x d_{j,eps'} d_{i,eps}    for j <= i.
"""

from __future__ import annotations

import itertools
from typing import Hashable, Iterable, Sequence

from .graph import Graph, face_positions, iter_cube_maps

CubeId = Hashable


class SemiCubicalSet:
    """Cubes per dimension (ordered, unique) and their face tables.

    faces[n][x] is a tuple of length 2n holding x d_{i,eps} at position
    2*(i-1) + eps.
    """

    def __init__(self, cubes: Sequence[Sequence[CubeId]], faces: Sequence[dict], validate: bool = True):
        self.cubes: list[tuple[CubeId, ...]] = [tuple(c) for c in cubes]
        while self.cubes and not self.cubes[-1]:
            self.cubes.pop()
        self.faces: list[dict] = [dict(faces[n]) if n < len(faces) else {} for n in range(len(self.cubes))]
        self._pos = [{x: k for k, x in enumerate(cs)} for cs in self.cubes]
        for n, cs in enumerate(self.cubes):
            if len(self._pos[n]) != len(cs):
                raise ValueError(f"duplicate cube in dimension {n}")
        if validate:
            self.validate()

    @property
    def dim(self) -> int:
        """Top populated dimension, -1 when empty."""
        return len(self.cubes) - 1

    def count(self, n: int) -> int:
        return len(self.cubes[n]) if 0 <= n < len(self.cubes) else 0

    def counts(self) -> list[int]:
        return [len(c) for c in self.cubes]

    def position(self, n: int, x: CubeId) -> int:
        return self._pos[n][x]

    def contains(self, n: int, x: CubeId) -> bool:
        return 0 <= n < len(self.cubes) and x in self._pos[n]

    def face(self, n: int, x: CubeId, i: int, eps: int) -> CubeId:
        if not 1 <= i <= n:
            raise IndexError(f"face index {i} out of range for a {n}-cube")
        return self.faces[n][x][2 * (i - 1) + eps]

    def validate(self) -> None:
        """Face tables are complete, land in the right dimension, and satisfy the face identity."""
        for n in range(1, len(self.cubes)):
            table = self.faces[n]
            below = self._pos[n - 1]
            for x in self.cubes[n]:
                fs = table.get(x)
                if fs is None or len(fs) != 2 * n:
                    raise ValueError(f"cube {x!r} in dimension {n} lacks a full face table")
                for y in fs:
                    if y not in below:
                        raise ValueError(f"face {y!r} of {x!r} is not an ({n - 1})-cube")
        bad = self.face_identity_violation()
        if bad is not None:
            raise ValueError(f"face identity fails: {bad}")

    def face_identity_violation(self):
        for n in range(2, len(self.cubes)):
            for x in self.cubes[n]:
                for i in range(1, n):
                    for j in range(1, i + 1):
                        for e, e2 in itertools.product((0, 1), repeat=2):
                            lhs = self.face(n - 1, self.face(n, x, i + 1, e), j, e2)
                            rhs = self.face(n - 1, self.face(n, x, j, e2), i, e)
                            if lhs != rhs:
                                return (n, x, i, j, e, e2)
        return None

    def __repr__(self) -> str:
        return f"SemiCubicalSet(counts={self.counts()})"


class SemiCubicalMap:
    """Per-dimension functions on cube ids commuting with faces."""

    def __init__(self, source: SemiCubicalSet, target: SemiCubicalSet, parts: Sequence[dict], validate: bool = True):
        self.source, self.target = source, target
        self.parts = [dict(parts[n]) if n < len(parts) else {} for n in range(len(source.cubes))]
        if validate:
            for n, cs in enumerate(source.cubes):
                for x in cs:
                    y = self.parts[n].get(x)
                    if y is None or not target.contains(n, y):
                        raise ValueError(f"map undefined or off-target at {x!r}")
                    for i in range(1, n + 1):
                        for e in (0, 1):
                            if self.parts[n - 1][source.face(n, x, i, e)] != target.face(n, y, i, e):
                                raise ValueError(f"map does not commute with face ({i},{e}) at {x!r}")

    def __call__(self, n: int, x: CubeId) -> CubeId:
        return self.parts[n][x]


def _pattern_face(p: tuple, i: int, eps: int) -> tuple:
    free = [k for k, v in enumerate(p) if v is None]
    k = free[i - 1]
    return p[:k] + (eps,) + p[k + 1:]


def standard_cube(n: int) -> SemiCubicalSet:
    """The representable n-cube.

    A k-cube is a length-n pattern with k free coordinates (None) and the
    others frozen to 0 or 1; face (i, eps) freezes the i-th free coordinate.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    cubes: list[list[tuple]] = [[] for _ in range(n + 1)]
    for p in itertools.product((0, 1, None), repeat=n):
        cubes[sum(v is None for v in p)].append(p)
    for c in cubes:
        c.sort(key=lambda p: tuple(2 if v is None else v for v in p))
    faces = [{p: tuple(_pattern_face(p, i, e) for i in range(1, k + 1) for e in (0, 1)) for p in cubes[k]}
             for k in range(n + 1)]
    return SemiCubicalSet(cubes, faces)


def standard_boundary(n: int) -> SemiCubicalSet:
    """The representable n-cube without its top cell."""
    return skeleton(standard_cube(n), n - 1)


def skeleton(X: SemiCubicalSet, n: int) -> SemiCubicalSet:
    if n < -1:
        raise ValueError("n must be >= -1")
    return SemiCubicalSet(X.cubes[: n + 1], X.faces[: n + 1], validate=False)


def disjoint_union(*parts: SemiCubicalSet) -> SemiCubicalSet:
    """Cube ids become (summand index, id)."""
    top = max((X.dim for X in parts), default=-1)
    cubes = [[] for _ in range(top + 1)]
    faces = [{} for _ in range(top + 1)]
    for s, X in enumerate(parts):
        for n, cs in enumerate(X.cubes):
            for x in cs:
                cubes[n].append((s, x))
                if n:
                    faces[n][(s, x)] = tuple((s, y) for y in X.faces[n][x])
    return SemiCubicalSet(cubes, faces, validate=False)


def pushout_semicubical(f: SemiCubicalMap, g: SemiCubicalMap) -> SemiCubicalSet:
    """Dimensionwise set pushout of B <- A -> C with induced faces.

    Cube ids are ("B", b) or ("C", c), each class named after its first
    member (B before C).  Raises ValueError if the induced faces are not
    well defined or break the face identity.
    """
    B, C = f.target, g.target
    top = max(B.dim, C.dim)
    cubes, faces = [], []
    rep_of: list[dict] = []
    for n in range(top + 1):
        members = [("B", b) for b in (B.cubes[n] if n <= B.dim else ())]
        members += [("C", c) for c in (C.cubes[n] if n <= C.dim else ())]
        order = {x: k for k, x in enumerate(members)}
        parent = list(range(len(members)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        if n <= f.source.dim:
            for a in f.source.cubes[n]:
                u, v = find(order[("B", f(n, a))]), find(order[("C", g(n, a))])
                if u != v:
                    parent[max(u, v)] = min(u, v)
        rep = {x: members[find(order[x])] for x in members}
        rep_of.append(rep)
        cubes.append(sorted(set(rep.values()), key=lambda x: order[x]))
    for n in range(top + 1):
        table: dict = {}
        if n:
            for x, r in rep_of[n].items():
                src = B if x[0] == "B" else C
                fs = tuple(rep_of[n - 1][(x[0], y)] for y in src.faces[n][x[1]])
                prev = table.setdefault(r, fs)
                if prev != fs:
                    raise ValueError(f"faces of glued cube {r!r} disagree")
        faces.append(table)
    return SemiCubicalSet(cubes, faces)


def cycle_semicubical(L: int) -> SemiCubicalSet:
    """L one-cubes glued head to tail: edge e_k runs from vertex k to k+1 mod L."""
    if L < 1:
        raise ValueError("L must be >= 1")
    return SemiCubicalSet([list(range(L)), list(range(L))],
                          [{}, {k: (k, (k + 1) % L) for k in range(L)}])


def nerve_cube_sets(G: Graph, max_dim: int, m: int = 1) -> SemiCubicalSet:
    """The face-only part of the m-nerve of G up to max_dim.

    k-cubes are graph maps Q_m^k -> G, written as tuples of vertex labels in
    row-major lattice order; face (i, eps) restricts to x_i = eps * m.
    """
    cubes, faces = [], []
    for k in range(max_dim + 1):
        idx = list(iter_cube_maps(G, k, m))
        lab = [tuple(G.label(v) for v in c) for c in idx]
        cubes.append(lab)
        table = {}
        if k:
            fp = face_positions(m, k)
            order = [fp[(i, e)] for i in range(1, k + 1) for e in (0, 1)]
            for c in lab:
                table[c] = tuple(tuple(c[p] for p in ps) for ps in order)
        faces.append(table)
    return SemiCubicalSet(cubes, faces, validate=False)


def to_json_dict(X: SemiCubicalSet) -> dict:
    """Debug dump: counts and face tables by cube position."""
    out = {"counts": X.counts(), "faces": []}
    for n in range(1, len(X.cubes)):
        out["faces"].append([[X.position(n - 1, y) for y in X.faces[n][x]] for x in X.cubes[n]])
    return out
