import itertools
from math import gcd

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from dhtk.snf import (
    SparseMatrix,
    det,
    is_prime,
    leftover_shape,
    matmul,
    rank_mod_p,
    smith_normal_form,
    sparse_invariant_factors,
)


def random_matrix(rng, r, c, lo=-5, hi=5, rank=None):
    if rank is None:
        return [[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)]
    if rank == 0:
        return [[0] * c for _ in range(r)]
    L = random_matrix(rng, r, rank, -3, 3)
    R = random_matrix(rng, rank, c, -3, 3)
    return matmul(L, R)


def sympy_factors(A):
    if not A or not A[0]:
        return []
    fs = invariant_factors(Matrix(A), domain=ZZ)
    return [abs(int(f)) for f in fs if f != 0]


def determinantal_factors(A):
    """d_k = D_k / D_{k-1}, D_k the gcd of all k x k minors."""
    r, c = len(A), len(A[0])
    D = [1]
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(c), k):
                g = gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        D.append(g)
    return [D[k] // D[k - 1] for k in range(1, len(D))]


def test_worked_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).factors == [1, 6]
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert smith_normal_form([[int(i == j) for j in range(4)] for i in range(4)]).factors == [1] * 4
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).factors == [2, 6, 12]


def test_random_unimodular_reconstruction(rng):
    for trial in range(1000):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        rank = rng.randint(0, min(r, c)) if trial % 3 == 0 else None
        A = random_matrix(rng, r, c, rank=rank)
        res = smith_normal_form(A, transforms=True)
        assert matmul(matmul(res.U, A), res.V) == res.D
        assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
        for i in range(r):
            for j in range(c):
                if i != j:
                    assert res.D[i][j] == 0
        f = res.factors
        assert all(d > 0 for d in f)
        assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
        assert [res.D[i][i] for i in range(len(f))] == f
        assert all(res.D[i][i] == 0 for i in range(len(f), min(r, c)))


def test_against_sympy(rng):
    for _ in range(200):
        A = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), -9, 9)
        assert smith_normal_form(A).factors == sympy_factors(A)


def test_against_determinantal_divisors(rng):
    for _ in range(100):
        A = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), -6, 6)
        assert smith_normal_form(A).factors == determinantal_factors(A)


def sparse_random(rng, r, c, density=0.15, vals=(-1, 1, 1, -1, 2, -2, 3)):
    return [[rng.choice(vals) if rng.random() < density else 0 for _ in range(c)] for _ in range(r)]


def test_sparse_phase_agrees_with_dense(rng):
    for _ in range(200):
        A = sparse_random(rng, rng.randint(1, 25), rng.randint(1, 25))
        S = SparseMatrix.from_dense(A)
        assert sparse_invariant_factors(S) == smith_normal_form(A).factors
        assert S.to_dense() == A


def test_sparse_torsion_survives_elimination():
    # boundary-like matrix with a Z/2 factor hidden behind unit pivots
    A = [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 2, 2], [1, 0, 0, 2]]
    S = SparseMatrix.from_dense(A)
    assert sparse_invariant_factors(S) == smith_normal_form(A).factors == determinantal_factors(A)
    piv, r, c = leftover_shape(S)
    assert piv + min(r, c) >= len(smith_normal_form(A).factors)


def oracle_rank_mod_p(A, p):
    M = [[x % p for x in row] for row in A]
    rank, col = 0, 0
    rows, cols = len(M), len(M[0]) if M else 0
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], -1, p)
        for i in range(rows):
            if i != rank and M[i][col]:
                q = M[i][col] * inv % p
                M[i] = [(a - q * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_rank_mod_p(rng, p):
    for _ in range(100):
        A = sparse_random(rng, rng.randint(1, 15), rng.randint(1, 15), 0.3, (1, -1, 2, 3, 4, 6))
        S = SparseMatrix.from_dense(A)
        r = rank_mod_p(S, p)
        assert r == oracle_rank_mod_p(A, p)
        assert r == sum(1 for d in smith_normal_form(A).factors if d % p)


def test_rank_mod_p_rejects_composite():
    with pytest.raises(ValueError):
        rank_mod_p(SparseMatrix(1, 1, [{0: 1}]), 4)
    assert is_prime(2) and is_prime(13) and not is_prime(1) and not is_prime(9)


def test_det_matches_sympy(rng):
    for _ in range(100):
        n = rng.randint(1, 5)
        A = random_matrix(rng, n, n, -7, 7)
        assert det(A) == int(Matrix(A).det())


def test_sparse_matmul():
    A = SparseMatrix.from_dense([[1, 2], [0, 1]])
    B = SparseMatrix.from_dense([[1, -2], [0, 1]])
    assert A.matmul(B).to_dense() == [[1, 0], [0, 1]]
    assert not A.is_zero() and SparseMatrix(2, 3).is_zero()
    assert list(A.triplets()) == [(0, 0, 1), (0, 1, 2), (1, 1, 1)]
