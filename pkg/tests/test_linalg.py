import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF, Matrix
from sympy.polys.matrices import DomainMatrix

from gl2mod import linalg as la
from gl2mod.ff import make_field

PRIME_FIELDS = [2, 3, 5, 7, 13, 101]
EXT_FIELDS = [(2, 2), (2, 3), (3, 2), (5, 2), (7, 2)]


def sympy_rank(rows, p):
    if not rows or not rows[0]:
        return 0
    return DomainMatrix([[GF(p)(x) for x in r] for r in rows], (len(rows), len(rows[0])),
                        GF(p)).rank()


def rand_matrix(rng, F, n, m):
    return rng.integers(0, F.q, size=(n, m))


@pytest.mark.parametrize("p", PRIME_FIELDS)
def test_matmul_matches_integer_product(p):
    F = make_field(p, 1)
    rng = np.random.default_rng(p)
    for n, m, r in [(1, 1, 1), (3, 4, 2), (10, 7, 9), (30, 30, 30)]:
        A, B = rand_matrix(rng, F, n, m), rand_matrix(rng, F, m, r)
        got = la.to_ints(F, la.matmul(F, la.from_ints(F, A), la.from_ints(F, B)))
        want = (Matrix(A.tolist()) * Matrix(B.tolist())).applyfunc(lambda x: x % p)
        assert got.tolist() == want.tolist()


def test_matmul_huge_prime_is_exact():
    p = 2147483629  # largest prime below 2^31
    F = make_field(p, 1)
    A = np.array([[p - 1, p - 2], [p - 3, p - 4]])
    got = la.to_ints(F, la.matmul(F, la.from_ints(F, A), la.from_ints(F, A)))
    want = (Matrix(A.tolist()) ** 2).applyfunc(lambda x: x % p)
    assert got.tolist() == want.tolist()


@pytest.mark.parametrize("p,k", EXT_FIELDS)
def test_matmul_extension_fields_entrywise(p, k):
    F = make_field(p, k)
    rng = np.random.default_rng(p * 10 + k)
    A, B = rand_matrix(rng, F, 5, 6), rand_matrix(rng, F, 6, 4)
    got = la.to_ints(F, la.matmul(F, la.from_ints(F, A), la.from_ints(F, B)))
    for i in range(5):
        for j in range(4):
            acc = 0
            for t in range(6):
                acc = F.add(acc, F.mul(int(A[i, t]), int(B[t, j])))
            assert got[i, j] == acc


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_rank_matches_sympy(p):
    F = make_field(p, 1)
    rng = np.random.default_rng(100 + p)
    for n, m in [(4, 4), (6, 3), (3, 8), (12, 12)]:
        # low rank products as well as generic matrices
        A = rand_matrix(rng, F, n, m)
        B = rand_matrix(rng, F, n, 2) @ rand_matrix(rng, F, 2, m) % p
        for M in (A, B):
            assert la.rank(F, la.from_ints(F, M)) == sympy_rank(M.tolist(), p)


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (7, 1)] + EXT_FIELDS)
def test_nullspace_and_inverse(p, k):
    F = make_field(p, k)
    rng = np.random.default_rng(7 * p + k)
    for _ in range(5):
        A = la.from_ints(F, rand_matrix(rng, F, 5, 8))
        N = la.nullspace(F, A)
        assert N.shape[1] == 8 - la.rank(F, A)
        assert la.is_zero(la.matmul(F, A, la.transpose(N)))
    n = 6
    while True:
        A = la.from_ints(F, rand_matrix(rng, F, n, n))
        if la.rank(F, A) == n:
            break
    assert la.equal(la.matmul(F, A, la.inverse(F, A)), la.eye(F, n))


def test_inverse_of_singular_matrix_raises():
    F = make_field(5, 1)
    with pytest.raises(ValueError):
        la.inverse(F, la.from_ints(F, [[1, 2], [2, 4]]))


def test_rref_is_reduced():
    F = make_field(3, 2)
    rng = np.random.default_rng(3)
    A = la.from_ints(F, rand_matrix(rng, F, 6, 9))
    R, piv = la.rref(F, A)
    Ri = la.to_ints(F, R)
    for i, c in enumerate(piv):
        assert Ri[i, c] == 1
        assert all(Ri[j, c] == 0 for j in range(len(piv)) if j != i)
        assert not Ri[i, :c].any()


def test_echelon_grows_monotonically():
    F = make_field(2, 3)
    rng = np.random.default_rng(11)
    E = la.Echelon(F, 7)
    seen = la.zeros(F, 0, 7)
    for _ in range(10):
        V = la.from_ints(F, rand_matrix(rng, F, 1, 7))
        E.add(V)
        seen = np.concatenate([seen, V], axis=1)
        assert E.dim == la.rank(F, seen)


def test_solve_rows():
    F = make_field(7, 1)
    B = la.from_ints(F, [[1, 0, 2], [0, 1, 3]])
    C = la.from_ints(F, [[3, 4], [0, 6]])
    X = la.matmul(F, C, B)
    assert la.equal(la.solve_rows(F, X, B), C)
    assert la.solve_rows(F, la.from_ints(F, [[0, 0, 1]]), B) is None


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 1), (5, 1), (2, 2), (3, 2)]), st.data())
def test_matmul_associative(pk, data):
    F = make_field(*pk)
    n = data.draw(st.integers(1, 5))
    mats = [la.from_ints(F, data.draw(st.lists(st.lists(st.integers(0, F.q - 1), min_size=n,
                                                         max_size=n), min_size=n, max_size=n)))
            for _ in range(3)]
    A, B, C = mats
    assert la.equal(la.matmul(F, la.matmul(F, A, B), C), la.matmul(F, A, la.matmul(F, B, C)))
