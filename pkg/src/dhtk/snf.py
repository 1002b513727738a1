"""Exact integer linear algebra: Smith normal form and ranks mod p.

Dense matrices are lists of lists of Python ints.  Large boundary matrices go
through a sparse phase first: every pivot that is a unit (+1 or -1) can be
cleared by row and column operations without touching the remaining
invariant factors, so unit pivots are eliminated sparsely (pivots chosen by
a Markowitz-style fill estimate) and only the leftover block is reduced
densely.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class SparseMatrix:
    """Column-major sparse integer matrix: cols[j] maps row -> nonzero value."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Sequence[dict[int, int]] | None = None):
        self.nrows, self.ncols = nrows, ncols
        self.cols = [dict(c) for c in cols] if cols is not None else [{} for _ in range(ncols)]
        if len(self.cols) != ncols:
            raise ValueError("column count mismatch")

    @classmethod
    def from_dense(cls, A: Sequence[Sequence[int]]) -> "SparseMatrix":
        nr = len(A)
        nc = len(A[0]) if nr else 0
        return cls(nr, nc, [{i: int(A[i][j]) for i in range(nr) if A[i][j]} for j in range(nc)])

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for c in other.cols:
            acc: dict[int, int] = {}
            for k, v in c.items():
                for i, w in self.cols[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            out.append({i: v for i, v in acc.items() if v})
        return SparseMatrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def triplets(self) -> Iterable[tuple[int, int, int]]:
        for j, c in enumerate(self.cols):
            for i in sorted(c):
                yield i, j, c[i]

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


@dataclass
class SNFResult:
    factors: list[int]               # nonzero diagonal entries d1 | d2 | ...
    rank: int
    U: list[list[int]] | None = field(default=None, repr=False)
    V: list[list[int]] | None = field(default=None, repr=False)
    D: list[list[int]] | None = field(default=None, repr=False)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.factors if d > 1]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _snf_dense(A: list[list[int]], transforms: bool):
    """In-place Smith normal form. Returns (diag, U, V) with U*A0*V = A."""
    r = len(A)
    c = len(A[0]) if r else 0
    U = _identity(r) if transforms else None
    V = _identity(c) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        a, b = A[dst], A[src]
        for k in range(c):
            if b[k]:
                a[k] += q * b[k]
        if U is not None:
            ua, ub = U[dst], U[src]
            for k in range(r):
                if ub[k]:
                    ua[k] += q * ub[k]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    diag = []
    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            row = A[i]
            for j in range(t, c):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover of row/col t onto the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, r) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, c) if A[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        diag.append(A[t][t])
    return diag, U, V


def smith_normal_form(M, transforms: bool = False) -> SNFResult:
    """Smith normal form of a dense or sparse integer matrix.

    With transforms=True, U and V are unimodular and U * M * V = D.
    Without, sparse input is routed through unit-pivot elimination.
    """
    if isinstance(M, SparseMatrix):
        if not transforms:
            f = sparse_invariant_factors(M)
            return SNFResult(f, len(f))
        M = M.to_dense()
    A = [[int(x) for x in row] for row in M]
    diag, U, V = _snf_dense(A, transforms)
    return SNFResult(diag, len(diag), U, V, A if transforms else None)


def _eliminate(M: SparseMatrix, p: int | None):
    """Sparse pivoting on unit entries (every nonzero entry when p is a prime).

    Returns (number of pivots, leftover rows {r: {c: v}}).
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, dict[int, int]] = {}
    for j, col in enumerate(M.cols):
        cj = {}
        for i, v in col.items():
            if p is not None:
                v %= p
            if v:
                cj[i] = v
                rows.setdefault(i, {})[j] = v
        if cj:
            cols[j] = cj

    def is_unit(v):
        return v != 0 if p is not None else v in (1, -1)

    def inverse(v):
        return pow(v, -1, p) if p is not None else v

    heap = [(len(c), 0, j) for j, c in cols.items()]
    heap += [(len(r), 1, i) for i, r in rows.items()]
    heapq.heapify(heap)
    pivots = 0
    while heap:
        ln, kind, key = heapq.heappop(heap)
        line = (cols if kind == 0 else rows).get(key)
        if line is None or len(line) != ln:
            continue
        units = [x for x, v in line.items() if is_unit(v)]
        if not units:
            continue
        if kind == 0:
            c = key
            r = min(units, key=lambda i: (len(rows[i]), i))
        else:
            r = key
            c = min(units, key=lambda j: (len(cols[j]), j))
        prow, pcol = rows[r], cols[c]
        u_inv = inverse(prow[c])
        touched_cols = set()
        for r2, a in list(pcol.items()):
            if r2 == r:
                continue
            q = a * u_inv
            row2 = rows[r2]
            for c2, v in prow.items():
                nv = row2.get(c2, 0) - q * v
                if p is not None:
                    nv %= p
                col2 = cols[c2]
                if nv:
                    row2[c2] = nv
                    col2[r2] = nv
                else:
                    row2.pop(c2, None)
                    col2.pop(r2, None)
                touched_cols.add(c2)
            heapq.heappush(heap, (len(row2), 1, r2))
        for c2 in prow:
            cols[c2].pop(r, None)
            touched_cols.add(c2)
        del rows[r]
        touched_cols.discard(c)
        del cols[c]
        for c2 in touched_cols:
            col2 = cols[c2]
            if col2:
                heapq.heappush(heap, (len(col2), 0, c2))
            else:
                del cols[c2]
        pivots += 1
    return pivots, {i: r for i, r in rows.items() if r}


def sparse_invariant_factors(M: SparseMatrix) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix, in divisibility order."""
    pivots, left = _eliminate(M, None)
    if not left:
        return [1] * pivots
    rkeys = sorted(left)
    ckeys = sorted({c for r in left.values() for c in r})
    cpos = {c: k for k, c in enumerate(ckeys)}
    A = [[0] * len(ckeys) for _ in rkeys]
    for a, r in enumerate(rkeys):
        for c, v in left[r].items():
            A[a][cpos[c]] = v
    diag, _, _ = _snf_dense(A, False)
    return [1] * pivots + diag


def leftover_shape(M: SparseMatrix) -> tuple[int, int, int]:
    """(unit pivots, leftover rows, leftover columns) of the sparse phase; for reporting."""
    pivots, left = _eliminate(M, None)
    return pivots, len(left), len({c for r in left.values() for c in r})


def rank_mod_p(M: SparseMatrix, p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    pivots, left = _eliminate(M, p)
    assert not left
    return pivots


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def det(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if inner else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]
