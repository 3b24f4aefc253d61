from math import lcm

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gl2mod.gl2 import group_order
from gl2mod.proorder import INF, Supernatural, bad_primes, pro_order_gln, sn_lcm, sn_mul

PRIMES = [2, 3, 5, 7, 11, 13]


def sn(**kw):
    return Supernatural({int(k[1:]): v for k, v in kw.items()})


def test_mul_absorbs_infinity():
    assert sn_mul(sn(p2=3), sn(p2=INF)) == sn(p2=INF)


def test_lcm_takes_maxima():
    assert sn_lcm(sn(p2=2, p3=1), sn(p2=1, p3=2)) == sn(p2=2, p3=2)


def test_pro_order_examples():
    assert str(pro_order_gln(2, 3)) == "2^4 * 3^inf"
    assert str(pro_order_gln(2, 2)) == "2^inf * 3"
    assert pro_order_gln(2, 2) == sn(p2=INF, p3=1)
    for p in PRIMES:
        want = {r: e for r, e in sympy.factorint(p - 1).items()}
        want[p] = INF
        assert pro_order_gln(1, p) == Supernatural(want)


def test_bad_primes_examples():
    assert bad_primes(2, 5) == [2, 3, 5]
    assert bad_primes(1, 2) == [2]
    assert bad_primes(2, 7) == [2, 3, 7]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("p", PRIMES)
def test_against_direct_factorization(n, p):
    order = 1
    for i in range(n):
        order *= p ** n - p ** i
    assert order == group_order(n, p)
    f = sympy.factorint(order)
    got = pro_order_gln(n, p)
    assert {r: e for r, e in got.exponents.items() if r != p} == {
        r: e for r, e in f.items() if r != p}
    assert got.exponents[p] is INF
    assert bad_primes(n, p) == sorted(set(f) | {p})


@pytest.mark.parametrize("n,p", [(2, 3), (2, 5), (3, 2), (4, 13)])
def test_lcm_chain_stabilizes(n, p):
    acc = Supernatural()
    for k in range(1, 11):
        acc = sn_lcm(acc, Supernatural.from_int(group_order(n, p) * p ** k))
    # the chain tops out at p^(v_p|G| + 10), the pro-order truncated there
    cap = sympy.multiplicity(p, group_order(n, p)) + 10
    assert acc == pro_order_gln(n, p).truncate(cap)


def test_errors():
    with pytest.raises(ValueError):
        pro_order_gln(2, 4)
    with pytest.raises(ValueError):
        Supernatural({4: 1})
    with pytest.raises(ValueError):
        Supernatural.from_int(0)
    with pytest.raises(ValueError):
        pro_order_gln(2, 3).to_int()


def test_divides():
    assert sn(p2=3).divides(sn(p2=INF))
    assert not sn(p2=INF).divides(sn(p2=3))
    assert Supernatural.from_int(48).divides(pro_order_gln(2, 3))


supernaturals = st.dictionaries(st.sampled_from(PRIMES),
                                st.one_of(st.integers(0, 6), st.just(INF)),
                                max_size=4).map(Supernatural)


@settings(max_examples=100, deadline=None)
@given(supernaturals, supernaturals, supernaturals)
def test_lattice_laws(a, b, c):
    assert sn_lcm(a, a) == a
    assert sn_lcm(a, b) == sn_lcm(b, a)
    assert sn_lcm(sn_lcm(a, b), c) == sn_lcm(a, sn_lcm(b, c))
    assert sn_mul(a, b) == sn_mul(b, a)
    assert sn_mul(sn_mul(a, b), c) == sn_mul(a, sn_mul(b, c))
    assert a.divides(sn_lcm(a, b)) and a.divides(sn_mul(a, b))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_finite_values_match_integers(x, y):
    X, Y = Supernatural.from_int(x), Supernatural.from_int(y)
    assert sn_mul(X, Y).to_int() == x * y
    assert sn_lcm(X, Y).to_int() == lcm(x, y)
