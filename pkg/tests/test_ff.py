import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy import Poly, symbols

from gl2mod import CycNum
from gl2mod.ff import (FieldError, discrete_log, elem, embed, embed_value, frobenius, generator,
                       lift_root_of_unity, lift_value, make_field, reduce_root)

X = symbols("x")
SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2),
                (7, 1), (7, 2), (11, 1), (13, 1)]


def naive_order(F, x):
    y, n = x, 1
    while y != 1:
        y = F.mul(y, x)
        n += 1
    return n


# -- makeField examples ----------------------------------------------------------

def test_make_field_f5_generator_is_2():
    F = make_field(5, 1)
    assert F.gen == 2
    assert naive_order(F, 2) == 4


def test_make_field_f2_generator_is_1():
    assert make_field(2, 1).gen == 1


def test_make_field_f9_generator_order_8():
    F = make_field(3, 2)
    assert F.q == 9
    assert len(list(F.elements_lex())) == 9
    assert naive_order(F, F.gen) == 8


def test_make_field_errors():
    with pytest.raises(FieldError):
        make_field(4, 1)
    with pytest.raises(FieldError):
        make_field(3, 20)


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_defining_poly_is_least_irreducible(p, k):
    F = make_field(p, k)
    f = Poly(list(reversed(F.poly)), X, modulus=p)
    assert f.is_irreducible
    # no lexicographically smaller monic irreducible (constant term first)
    for tail in itertools.product(range(p), repeat=k):
        if tuple(tail) + (1,) == F.poly:
            break
        g = Poly([1] + list(reversed(tail)), X, modulus=p)
        assert not g.is_irreducible


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_generator_is_primitive_and_powers_enumerate(p, k):
    F = make_field(p, k)
    seen = set()
    y = 1
    for _ in range(F.q - 1):
        seen.add(y)
        y = F.mul(y, F.gen)
    assert y == 1
    assert seen == set(range(1, F.q))


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, k):
    F = make_field(p, k)
    for x in range(1, F.q):
        assert F.mul(x, F.inv(x)) == 1
        assert F.add(x, F.neg(x)) == 0


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2), (7, 2)])
def test_multiplication_matches_sympy_quotient_ring(p, k):
    F = make_field(p, k)
    mod = Poly(list(reversed(F.poly)), X, modulus=p)
    for x, y in itertools.product(range(F.q), repeat=2):
        px = Poly(list(reversed(F.coords(x))) or [0], X, modulus=p)
        py = Poly(list(reversed(F.coords(y))) or [0], X, modulus=p)
        r = (px * py).rem(mod)
        want = [int(c) % p for c in reversed(r.all_coeffs())]
        want += [0] * (k - len(want))
        assert list(F.coords(F.mul(x, y))) == want


# -- discrete log ----------------------------------------------------------------

def test_discrete_log_examples():
    F = make_field(5, 1)
    assert discrete_log(elem(F, 1)) == 0
    assert discrete_log(generator(F)) == 1
    assert discrete_log(elem(F, 4)) == 2


def test_discrete_log_zero_raises():
    with pytest.raises(Exception):
        discrete_log(elem(make_field(5, 1), 0))


@pytest.mark.parametrize("p,k", [(2, 21), (3, 13), (1048583, 1)])
def test_discrete_log_large_fields_bsgs(p, k):
    F = make_field(p, k)
    assert not F.has_tables
    for a in [0, 1, 12345, F.q - 2]:
        assert F.log(F.pow(F.gen, a)) == a


# -- embeddings and Frobenius ----------------------------------------------------------

def test_embed_examples():
    F3, F9 = make_field(3, 1), make_field(3, 2)
    assert embed(elem(F3, 0), F9).value == 0
    assert embed(elem(F3, 1), F9).value == 1
    y = embed(elem(F3, 2), F9)
    assert y.value != 1 and (y * y).value == 1


def test_embed_incompatible_degree():
    with pytest.raises(FieldError):
        embed_value(1, make_field(2, 2), make_field(2, 3))


@pytest.mark.parametrize("p,a,b", [(2, 1, 2), (2, 2, 2), (2, 1, 6), (2, 3, 2), (3, 1, 2),
                                   (3, 2, 2), (5, 1, 2), (7, 1, 2), (3, 1, 3), (2, 2, 3)])
def test_embedding_is_a_field_homomorphism(p, a, b):
    S, T = make_field(p, a), make_field(p, a * b)
    for x, y in itertools.product(range(S.q), repeat=2):
        ex, ey = embed_value(x, S, T), embed_value(y, S, T)
        assert embed_value(S.add(x, y), S, T) == T.add(ex, ey)
        assert embed_value(S.mul(x, y), S, T) == T.mul(ex, ey)


@pytest.mark.parametrize("p,a,b", [(2, 1, 2), (2, 2, 2), (3, 1, 2), (5, 1, 2), (7, 1, 2),
                                   (2, 3, 2), (3, 2, 2)])
def test_embed_commutes_with_frobenius(p, a, b):
    S, T = make_field(p, a), make_field(p, a * b)
    for x in range(S.q):
        assert embed(frobenius(elem(S, x)), T) == frobenius(embed(elem(S, x), T))


def test_frobenius_examples():
    F5 = make_field(5, 1)
    assert all(frobenius(elem(F5, x)).value == x for x in range(5))
    F9 = make_field(3, 2)
    assert frobenius(generator(F9)) == generator(F9) ** 3
    assert frobenius(elem(F9, 0)).value == 0


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_frobenius_k_fold_is_identity(p, k):
    F = make_field(p, k)
    for x in range(F.q):
        y = elem(F, x)
        for _ in range(k):
            y = frobenius(y)
        assert y.value == x


# -- root-of-unity lifts ---------------------------------------------------------------

def test_lift_examples():
    F7 = make_field(7, 1)
    assert lift_root_of_unity(elem(F7, 1), 6) == CycNum.rational(1)
    assert lift_root_of_unity(elem(F7, 6), 6) == CycNum.rational(-1)
    F = make_field(2, 4)
    m = 5
    gm = F.pow(F.gen, (F.q - 1) // m)
    assert lift_value(F, gm, 15) == CycNum.zeta(15, 15 // m)


def test_lift_rejects_bad_order():
    with pytest.raises(FieldError):
        lift_value(make_field(7, 1), 3, 4)


@pytest.mark.parametrize("p,k", [(2, 4), (3, 3), (5, 2), (7, 2), (2, 6), (13, 1), (11, 2)])
def test_lift_is_multiplicative_exhaustive(p, k):
    F = make_field(p, k)
    n = F.q - 1
    for m in sympy.divisors(n):
        if m > 200:
            continue
        step = n // m
        mu = [F.exp(step * i) for i in range(m)]
        lifts = {x: lift_value(F, x, m) for x in mu}
        for x in mu:
            for y in mu:
                assert lifts[F.mul(x, y)] == lifts[x] * lifts[y]


@pytest.mark.parametrize("M,p,k", [(24, 5, 2), (24, 3, 2), (48, 7, 2), (8, 3, 2), (15, 2, 4)])
def test_reduce_root_inverts_lift_on_prime_to_p_roots(M, p, k):
    F = make_field(p, k)
    for t in range(M):
        x = reduce_root(M, t, F)
        # the p-part of zeta_M^t is killed; the rest lifts back
        Mp = M
        while Mp % p == 0:
            Mp //= p
        if (F.q - 1) % Mp:
            continue
        z = CycNum.zeta(M, t) ** (M // Mp * pow(M // Mp, -1, Mp) if M != Mp else 1)
        assert lift_value(F, x, M) == z


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_ring_axioms_property(pk, data):
    F = make_field(*pk)
    x, y, z = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.add(x, y) == F.add(y, x)


@pytest.mark.parametrize("p,k", [(2147483629, 1), (2, 31), (3, 19), (46337, 2), (211, 4)])
def test_fields_at_the_size_cap(p, k):
    F = make_field(p, k)
    assert F.q <= 2**31
    assert F.order(F.gen) == F.q - 1
    e = 123456789 % (F.q - 1)
    assert F.log(F.pow(F.gen, e)) == e


@pytest.mark.parametrize("p,k", [(2, 4), (3, 3), (5, 2), (7, 3), (2, 21), (3, 13)])
def test_norm_is_the_power_map(p, k):
    F = make_field(p, k)
    rng = np.random.default_rng(p + k)
    for x in rng.integers(1, F.q, size=20):
        assert F.norm(int(x)) == F.pow(int(x), (F.q - 1) // (p - 1))


@pytest.mark.parametrize("p,k", [(3, 2), (2, 6), (5, 2), (46337, 2)])
def test_generator_norm_is_prime_field_generator(p, k):
    F = make_field(p, k)
    assert F.norm(F.gen) == make_field(p, 1).gen
