"""Discrete homology of graphs.

C_k is free on graph maps Q_1^k -> G; the degenerate maps (constant along some
coordinate) span a subcomplex D_k and the homology is that of C/D.  The
quotient basis is the set of non-degenerate maps, and a face that is
degenerate contributes zero.  Boundary:

    d f = sum_i (-1)^i (f d_{i,1} - f d_{i,0})
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from operator import itemgetter

from .graph import Graph, face_positions, iter_cube_maps, lattice_points
from .snf import SparseMatrix, is_prime, leftover_shape, rank_mod_p, sparse_invariant_factors

DEFAULT_BUDGET = 10 ** 9


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int, budget: int, dim: int):
        self.estimate, self.budget, self.dim = estimate, budget, dim
        super().__init__(
            f"enumerating {dim}-cubes is estimated at {estimate:.3g} candidate maps, over the budget {budget:.3g}"
        )


def current_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("DHT_BUDGET")
    if env:
        return int(float(env))
    return DEFAULT_BUDGET


def estimate_cubes(G: Graph, k: int, m: int = 1) -> int:
    """Crude upper bound |V| * (max closed degree)^(points - 1) on the search size."""
    if len(G) == 0:
        return 0
    d = G.max_degree() + 1
    return len(G) * d ** ((m + 1) ** k - 1)


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " (+) ".join(parts) if parts else "0"

    def as_dict(self, k: int) -> dict:
        return {"k": k, "rank": self.rank, "torsion": list(self.torsion)}


def _slice_getters(m: int, k: int):
    """For each coordinate i, getters for the slices x_i = 0..m (row-major order)."""
    pts = lattice_points(m, k)
    out = []
    for i in range(k):
        out.append([itemgetter(*[p for p, x in enumerate(pts) if x[i] == t]) for t in range(m + 1)])
    return out


def _as_tuple(getter, c):
    v = getter(c)
    return v if isinstance(v, tuple) else (v,)


def is_degenerate(cube: tuple, m: int = 1) -> bool:
    """True iff the cube map is constant along some coordinate direction."""
    P = len(cube)
    k = 0
    while (m + 1) ** k < P:
        k += 1
    for sl in _slice_getters(m, k):
        first = _as_tuple(sl[0], cube)
        if all(_as_tuple(g, cube) == first for g in sl[1:]):
            return True
    return False


@dataclass
class ChainComplex:
    graph: Graph
    m: int
    bases: list[list[tuple[int, ...]]]                 # per k: non-degenerate cubes (vertex indices)
    boundaries: list[SparseMatrix | None]              # boundaries[k]: C_k -> C_{k-1}; None for k = 0
    total_cubes: list[int] = field(default_factory=list)  # all cube maps per k, degenerate included
    convention: str = "index"
    _factors: dict = field(default_factory=dict, repr=False)

    @property
    def max_dim(self) -> int:
        return len(self.bases) - 1

    def sizes(self) -> list[int]:
        return [len(b) for b in self.bases]

    def labelled_basis(self, k: int) -> list[tuple]:
        lab = self.graph.label
        return [tuple(lab(v) for v in c) for c in self.bases[k]]

    def factors(self, k: int) -> list[int]:
        """Nonzero invariant factors of boundaries[k]; [] for k = 0 and beyond max_dim."""
        if k <= 0 or k > self.max_dim:
            return []
        if k not in self._factors:
            self._factors[k] = sparse_invariant_factors(self.boundaries[k])
        return self._factors[k]

    def boundary_shape(self, k: int) -> tuple[int, int]:
        M = self.boundaries[k]
        return (M.nrows, M.ncols)

    def check_dd_zero(self) -> bool:
        for k in range(2, self.max_dim + 1):
            if not self.boundaries[k - 1].matmul(self.boundaries[k]).is_zero():
                return False
        return True

    def homology(self, k: int) -> HomologyGroup:
        if k < 0:
            raise ValueError("k must be >= 0")
        if k + 1 > self.max_dim:
            raise ValueError(f"H_{k} needs cubes up to dimension {k + 1}; complex stops at {self.max_dim}")
        rk = len(self.factors(k))
        nxt = self.factors(k + 1)
        rank = len(self.bases[k]) - rk - len(nxt)
        return HomologyGroup(rank, tuple(d for d in nxt if d > 1))

    def homology_mod_p(self, k: int, p: int) -> int:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k + 1 > self.max_dim:
            raise ValueError(f"H_{k} needs cubes up to dimension {k + 1}")
        rk = rank_mod_p(self.boundaries[k], p) if k >= 1 else 0
        return len(self.bases[k]) - rk - rank_mod_p(self.boundaries[k + 1], p)


def chain_complex(G: Graph, max_dim: int, m: int = 1, convention: str = "index",
                  budget: int | None = None, check: bool = True) -> ChainComplex:
    """The normalized cubical chain complex of G up to dimension max_dim.

    convention="index" uses sign (-1)^i on face pair i; "twisted" multiplies
    the whole k-th boundary by (-1)^k as well.  Both square to zero and give
    isomorphic homology.
    """
    if convention not in ("index", "twisted"):
        raise ValueError("convention must be 'index' or 'twisted'")
    limit = current_budget(budget)
    bases: list[list[tuple[int, ...]]] = []
    totals: list[int] = []
    for k in range(max_dim + 1):
        est = estimate_cubes(G, k, m)
        if est > limit:
            raise BudgetExceeded(est, limit, k)
        cubes = []
        total = 0
        if k == 0:
            cubes = [(v,) for v in range(len(G))]
            total = len(cubes)
        else:
            slices = _slice_getters(m, k)
            for c in iter_cube_maps(G, k, m):
                total += 1
                degen = False
                for sl in slices:
                    a = sl[0](c)
                    if all(g(c) == a for g in sl[1:]):
                        degen = True
                        break
                if not degen:
                    cubes.append(c)
        bases.append(cubes)
        totals.append(total)
    boundaries: list[SparseMatrix | None] = [None]
    for k in range(1, max_dim + 1):
        boundaries.append(_boundary(bases[k - 1], bases[k], m, k, convention))
    cc = ChainComplex(G, m, bases, boundaries, totals, convention)
    if check and not cc.check_dd_zero():
        raise AssertionError("boundary of boundary is not zero")
    return cc


def _boundary(lower: list[tuple], upper: list[tuple], m: int, k: int, convention: str) -> SparseMatrix:
    pos = {c: i for i, c in enumerate(lower)}
    fp = face_positions(m, k)
    tw = -1 if (convention == "twisted" and k % 2) else 1
    terms = []
    for i in range(1, k + 1):
        s = (-1) ** i * tw
        for e, sign in ((1, s), (0, -s)):
            idx = fp[(i, e)]
            g = itemgetter(*idx)
            terms.append((g, sign, len(idx) == 1))
    cols = []
    for c in upper:
        col: dict[int, int] = {}
        for g, sign, single in terms:
            f = (g(c),) if single else g(c)
            r = pos.get(f)
            if r is not None:
                col[r] = col.get(r, 0) + sign
        cols.append({r: v for r, v in col.items() if v})
    return SparseMatrix(len(lower), len(upper), cols)


def homology(G: Graph, k: int, max_dim: int | None = None, budget: int | None = None) -> HomologyGroup:
    """H_k(G) with integer coefficients."""
    d = k + 1 if max_dim is None else max_dim
    if d < k + 1:
        raise ValueError(f"H_{k} needs max_dim >= {k + 1}")
    return chain_complex(G, d, budget=budget).homology(k)


def homology_groups(G: Graph, top: int, budget: int | None = None) -> list[HomologyGroup]:
    """H_0..H_top from one complex built up to dimension top+1."""
    cc = chain_complex(G, top + 1, budget=budget)
    return [cc.homology(k) for k in range(top + 1)]


def homology_mod_p(G: Graph, k: int, p: int, max_dim: int | None = None, budget: int | None = None) -> int:
    """Dimension of H_k(G; Z/p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    d = k + 1 if max_dim is None else max_dim
    return chain_complex(G, d, budget=budget).homology_mod_p(k, p)


def report_sizes(cc: ChainComplex) -> list[dict]:
    """Per-dimension basis sizes and boundary-matrix shapes."""
    out = []
    for k in range(cc.max_dim + 1):
        row = {"k": k, "cubes": cc.total_cubes[k], "nondegenerate": len(cc.bases[k])}
        if k >= 1:
            M = cc.boundaries[k]
            row["boundary"] = [M.nrows, M.ncols]
            row["nnz"] = M.nnz
        out.append(row)
    return out


__all__ = [
    "BudgetExceeded", "ChainComplex", "HomologyGroup", "chain_complex", "homology", "homology_groups",
    "homology_mod_p", "is_degenerate", "estimate_cubes", "report_sizes", "leftover_shape",
]
