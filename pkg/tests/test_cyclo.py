from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st
from sympy import Poly, QQ, Rational, cyclotomic_poly, symbols, totient

from gl2mod.cyclo import (CycNum, cyc_arith, cyc_conj, galois, nullspace_exact,
                          rational_combination, solve_exact)

X = symbols("x")
z = CycNum.zeta


def sympy_coords(N, counts):
    """Power-basis coordinates of sum c * zeta_N^j, reduced with sympy."""
    f = Poly(0, X, domain=QQ)
    for j, c in counts.items():
        f += Poly(Rational(c) * X ** (j % N), X, domain=QQ)
    r = f.rem(Poly(cyclotomic_poly(N, X), X, domain=QQ))
    out = [Rational(0)] * int(totient(N))
    for (k,), c in r.terms():
        out[k] = c
    return out


def as_rationals(x):
    return [Rational(int(c.numerator), int(c.denominator)) for c in x.coords()]


# -- cycArith --------------------------------------------------------------------

def test_i_squared_is_minus_one():
    assert cyc_arith(z(4), z(4), "mul") == CycNum.rational(-1)
    assert (z(4) * z(4)).coords() == [-1, 0]


def test_zeta6_plus_inverse_is_one():
    assert cyc_arith(z(6), z(6, -1), "add") == 1


def test_sum_of_nontrivial_fifth_roots():
    assert z(5) + z(5, 2) + z(5, 3) + z(5, 4) == -1


def test_conductors_are_raised_to_lcm():
    assert z(3) == z(6, 2)
    assert cyc_arith(z(4), z(3), "mul") == z(12, 3 + 4)
    assert cyc_arith(z(4), z(4), "sub").is_zero()


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 8, 9, 12, 15, 24, 30, 48, 168])
def test_power_basis_matches_sympy_reduction(N):
    for j in range(2 * N):
        assert as_rationals(z(N, j)) == sympy_coords(N, {j: 1})


@pytest.mark.parametrize("N", [3, 4, 8, 12, 15, 24])
def test_zeta_to_the_N_and_cyclotomic_relation(N):
    assert z(N) ** N == 1
    phi = Poly(cyclotomic_poly(N, X), X).all_coeffs()[::-1]
    acc = CycNum.rational(0, N)
    for j, c in enumerate(phi):
        acc = acc + z(N, j) * int(c)
    assert acc.is_zero()


# -- conjugation and Galois ------------------------------------------------------------

def test_conj_examples():
    assert cyc_conj(CycNum.rational(mpq(3, 7))) == mpq(3, 7)
    assert cyc_conj(z(8)) == z(8, 7)


def test_galois_examples():
    x = z(15) + 3 * z(15, 4)
    assert galois(x, 1) == x
    assert galois(z(5), 2) == z(5, 2)


def test_galois_rejects_non_units():
    with pytest.raises(ValueError):
        galois(z(6), 3)


# -- solveExact -----------------------------------------------------------------

def test_solve_identity():
    b = [z(3), CycNum.rational(2), z(12, 5)]
    A = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    sol = solve_exact(A, b)
    assert sol.status == "unique" and sol.x == b


def test_solve_two_by_two():
    sol = solve_exact([[1, 1], [1, -1]], [2, 0])
    assert sol.status == "unique" and sol.x == [1, 1]


def test_solve_zeta3_system_residual_zero():
    w = z(3)
    A = [[1, w, w * w], [w, 1, 2], [w * w + 1, w, 3]]
    b = [1, w, 0]
    sol = solve_exact(A, b)
    assert sol.status == "unique"
    for i in range(3):
        res = sum((A[i][j] * sol.x[j] for j in range(3)), CycNum.rational(0)) - b[i]
        assert res.is_zero()


def test_solve_reports_inconsistency_and_deficiency():
    assert solve_exact([[1, 1], [1, 1]], [2, 0]).status == "inconsistent"
    assert solve_exact([[1, 1], [2, 2]], [2, 4]).status == "rank-deficient"


def test_nullspace_exact():
    w = z(3)
    A = [[1, w], [w * w, CycNum.rational(1)]]  # second row is w^2 times the first
    basis = nullspace_exact(A)
    assert len(basis) == 1
    v = basis[0]
    for row in A:
        assert (row[0] * v[0] + row[1] * v[1]).is_zero()


def test_rational_combination():
    cols = [[CycNum.rational(1), z(4)], [CycNum.rational(1), -z(4)]]
    target = [CycNum.rational(5), z(4) * 1]
    sol = rational_combination(cols, target)
    assert sol.status == "unique"
    assert [Fraction(int(c.numerator), int(c.denominator)) for c in map(mpq, sol.x)] == [3, 2]


# -- properties -------------------------------------------------------------------

CONDUCTORS = [1, 3, 4, 5, 8, 12, 15, 24]


@st.composite
def cycnums(draw, N=None):
    N = N or draw(st.sampled_from(CONDUCTORS))
    counts = draw(st.dictionaries(st.integers(0, N - 1), st.integers(-5, 5), max_size=6))
    den = draw(st.integers(1, 4))
    return CycNum.from_exponents(N, {j: mpq(c, den) for j, c in counts.items()})


@settings(max_examples=150, deadline=None)
@given(cycnums(), cycnums(), cycnums())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(CONDUCTORS), st.data())
def test_products_match_sympy(N, data):
    ca = data.draw(st.dictionaries(st.integers(0, N - 1), st.integers(-3, 3), max_size=4))
    cb = data.draw(st.dictionaries(st.integers(0, N - 1), st.integers(-3, 3), max_size=4))
    prod = {}
    for i, x in ca.items():
        for j, y in cb.items():
            prod[i + j] = prod.get(i + j, 0) + x * y
    got = CycNum.from_exponents(N, ca) * CycNum.from_exponents(N, cb)
    assert as_rationals(got) == sympy_coords(N, prod)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(CONDUCTORS), st.integers(0, 200))
def test_root_of_unity_times_conjugate_is_one(N, j):
    x = z(N, j)
    assert x * cyc_conj(x) == 1


@settings(max_examples=100, deadline=None)
@given(cycnums())
def test_conj_is_involution(x):
    assert cyc_conj(cyc_conj(x)) == x


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([5, 8, 12, 15, 24]), st.data())
def test_galois_is_a_group_action(N, data):
    units = [j for j in range(1, N) if Rational(j, N).q == N]
    j1 = data.draw(st.sampled_from(units))
    j2 = data.draw(st.sampled_from(units))
    x = data.draw(cycnums(N))
    assert galois(galois(x, j1), j2) == galois(x, j1 * j2 % N)


@settings(max_examples=60, deadline=None)
@given(cycnums())
def test_inverse(x):
    if x.is_zero():
        return
    assert x * x.inverse() == 1
