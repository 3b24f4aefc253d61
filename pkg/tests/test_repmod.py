import numpy as np
import pytest

from gl2mod import linalg as la
from gl2mod.ff import FieldError, make_field
from gl2mod.gl2 import gl2
from gl2mod.meataxe import composition_factors, is_irreducible, iso_test
from gl2mod.repmod import (CycField, apply_sum_map, coinvariants, det_twist, direct_sum,
                           dual_rep, fixed_space, frob_twist, group_gen_set,
                           hom_space, induced_from_borel, invariants, is_intertwiner,
                           module_field, one_dim, perm_p1, relation_test, restrict,
                           standard_rep, subgroup_elements, subgroup_order, sym_power,
                           tensor_rep, trivial_rep, whittaker_field, whittaker_mirabolic)

F5 = make_field(5, 1)


def closure_order(q, gens):
    G = gl2(q)
    seen = {G.identity()}
    frontier = [G.identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = G.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def assert_homomorphism(M, pairs=200, seed=0):
    """rho(g) rho(h) == rho(gh) on random pairs of group elements."""
    G = gl2(M.q)
    elts = subgroup_elements(M.q, M.group_tag)
    rng = np.random.default_rng(seed)
    for _ in range(pairs):
        g = elts[rng.integers(len(elts))]
        h = elts[rng.integers(len(elts))]
        lhs = M.ops.mul(M.image(g), M.image(h))
        assert M.ops.equal(lhs, M.image(G.mul(g, h)))


# -- generator sets --------------------------------------------------------------

@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
@pytest.mark.parametrize("tag", ["GL2", "B", "T", "U", "P0"])
def test_generators_generate_expected_subgroup(q, tag):
    gs = group_gen_set(q, tag)
    assert gs.group_tag == tag
    assert closure_order(q, gs.generators) == subgroup_order(q, tag)
    assert len(subgroup_elements(q, tag)) == subgroup_order(q, tag)


# -- standard representation -------------------------------------------------------

def test_standard_rep_examples():
    V = standard_rep(5)
    assert V.dim == 2
    assert V.trace((1, 0, 0, 1)) == 2
    assert fixed_space(V).shape[1] == 1
    g = F5.gen
    A = la.to_ints(F5, V.image((g, 0, 0, 1)))
    assert (A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]) % 5 == g


def test_image_rejects_singular_matrices():
    with pytest.raises(ValueError):
        standard_rep(5).image((2, 1, 3, 4))


def test_standard_rep_wrong_characteristic():
    with pytest.raises(FieldError):
        standard_rep(5, make_field(3, 1))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_standard_rep_is_tautological(q):
    V = standard_rep(q)
    for g in list(gl2(q).elements())[:300]:
        assert la.to_ints(V.field, V.image(g)).tolist() == [[g[0], g[1]], [g[2], g[3]]]


# -- Sym, det, tensor, dual ----------------------------------------------------------

def test_sym_examples():
    V = standard_rep(5)
    S0 = sym_power(V, 0)
    assert S0.dim == 1
    assert all(la.to_ints(F5, A).tolist() == [[1]] for A in S0.gens)
    assert sym_power(V, -1).dim == 0
    for i in range(8):
        assert sym_power(V, i).dim == i + 1


def test_sym_trace_is_complete_homogeneous_sum():
    V = standard_rep(7)
    for a, d in [(2, 3), (3, 5), (6, 6)]:
        g = (a, 0, 0, d)
        for i in range(6):
            want = sum(pow(a, j, 7) * pow(d, i - j, 7) for j in range(i + 1)) % 7
            assert sym_power(V, i).trace(g) == want


def test_det_twist_scales_by_det():
    V = standard_rep(5)
    W = det_twist(V, 1)
    g = (2, 1, 3, 3)
    det = (2 * 3 - 1 * 3) % 5
    want = la.smul(F5, det, V.image(g))
    assert la.equal(W.image(g), want)


def test_tensor_and_dual():
    V = standard_rep(5)
    S2 = sym_power(V, 2)
    T = tensor_rep(V, S2)
    assert T.dim == 6
    assert iso_test(dual_rep(dual_rep(S2)), S2)
    assert iso_test(V, det_twist(dual_rep(V), 1))


def test_direct_sum_is_block_diagonal():
    V = standard_rep(3)
    W = direct_sum(V, sym_power(V, 2))
    assert W.dim == 5
    assert relation_test(W)


# -- Frobenius twist -----------------------------------------------------------------

def test_frob_twist_over_prime_field_is_isomorphic():
    V = standard_rep(5)
    assert iso_test(frob_twist(V), V)


def test_frob_twist_d_times_is_identity():
    V = standard_rep(9)
    W = frob_twist(V, 2)
    assert all(la.equal(A, B) for A, B in zip(W.gens, V.gens))


def test_frob_twist_over_f9_is_not_isomorphic():
    V = standard_rep(9)
    assert not iso_test(frob_twist(V), V)


def test_frob_twist_matches_entrywise_frobenius():
    V = standard_rep(4)
    W = frob_twist(V)
    F = V.field
    for g in gl2(4).elements():
        fg = tuple(F.pow(x, 2) for x in g)
        assert la.equal(W.image(g), V.image(fg))


def test_frob_twist_wrong_characteristic():
    with pytest.raises(FieldError):
        frob_twist(one_dim(5, make_field(3, 1), 1))


# -- permutation module and induction ---------------------------------------------------

def test_perm_p1_examples():
    P = perm_p1(5, CycField(4))
    M = P.module
    assert M.dim == 6
    assert M.trace((1, 0, 0, 1)) == 6
    assert M.trace((1, 1, 0, 1)) == 1


@pytest.mark.parametrize("q,ell", [(5, 2), (5, 3), (7, 2), (4, 5)])
def test_sum_map_kills_constants_when_ell_divides_q_plus_1(q, ell):
    assert (q + 1) % ell == 0
    P = perm_p1(q, make_field(ell, 1))
    assert la.is_zero(apply_sum_map(P, P.constants))


def test_sum_map_on_constants_is_q_plus_1():
    P = perm_p1(5, make_field(7, 1))
    assert la.to_ints(make_field(7, 1), apply_sum_map(P, P.constants)).tolist() == [[6]]


def test_perm_p1_counts_fixed_points():
    q = 5
    P = perm_p1(q, CycField(1)).module
    G = gl2(q)
    pts = [(1, 0)] + [(t, 1) for t in range(q)]

    def act(pt, g):
        a, b, c, d = g
        x, y = pt
        u, v = (x * a + y * c) % q, (x * b + y * d) % q
        if v:
            inv = pow(v, -1, q)
            return (u * inv % q, 1)
        return (1, 0)

    for g in list(G.elements())[::37]:
        fixed = sum(1 for pt in pts if act(pt, g) == pt)
        assert P.trace(g) == fixed


def test_induced_trivial_is_perm_module():
    F = make_field(3, 1)
    assert iso_test(induced_from_borel(5, 0, 0, F), perm_p1(5, F).module)


@pytest.mark.parametrize("e1,e2", [(0, 1), (1, 3), (2, 2)])
def test_induced_dims(e1, e2):
    assert induced_from_borel(5, e1, e2, F5).dim == 6
    assert induced_from_borel(5, e1, e2, make_field(2, 2)).dim == 6


def test_ps_0_2_over_f5_factor_dims():
    assert composition_factors(induced_from_borel(5, 0, 2, F5)).dims() == [3, 3]


def test_induced_needs_roots_of_unity():
    with pytest.raises(FieldError):
        induced_from_borel(5, 1, 0, CycField(3))


# -- Whittaker ------------------------------------------------------------------------

def test_whittaker_examples():
    W = whittaker_mirabolic(5, whittaker_field(5, 3))
    assert W.dim == 4
    assert W.group_tag == "P0"
    assert is_irreducible(W)
    W0 = whittaker_mirabolic(5, CycField(5))
    assert W0.trace((1, 0, 0, 1)) == 4


def test_whittaker_rejects_characteristic_p():
    with pytest.raises(FieldError):
        whittaker_mirabolic(5, F5)
    with pytest.raises(FieldError):
        whittaker_field(5, 5)


def test_whittaker_character_is_induced():
    # char 0: trace vanishes off the conjugates of U and sums psi over the orbit on U
    q = 5
    W = whittaker_mirabolic(q, CycField(q))
    for a in range(1, q):
        for b in range(q):
            t = W.trace((a, b, 0, 1))
            if a != 1:
                assert t == 0
            elif b == 0:
                assert t == q - 1
            else:
                assert t == -1


# -- invariants and coinvariants ---------------------------------------------------------

def test_invariants_examples():
    P = perm_p1(5, make_field(3, 1)).module
    I = invariants(P)
    assert I.dim == 2 and I.group_tag == "T"
    assert coinvariants(P).dim == 2


def test_invariants_equal_coinvariants_when_semisimple():
    for e1, e2 in [(0, 0), (0, 1), (2, 3)]:
        M = induced_from_borel(5, e1, e2, module_field(5, 7))
        assert invariants(M).dim == coinvariants(M).dim


def char_p_suite(q):
    V = standard_rep(q)
    F = V.field
    mods = [sym_power(V, i) for i in range(q + 1)]
    mods += [det_twist(sym_power(V, i), 1) for i in range(3)]
    mods += [induced_from_borel(q, a, b, F) for a in range(q - 1) for b in range(q - 1)]
    mods += [perm_p1(q, F).module, tensor_rep(V, V), dual_rep(sym_power(V, 2))]
    if q == 4:
        mods.append(frob_twist(V))
    return mods


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_fixed_vectors_in_characteristic_p(q):
    for M in char_p_suite(q):
        if M.dim:
            assert fixed_space(M).shape[1] >= 1
            assert fixed_space(restrict(M, "B")).shape[1] >= 1


@pytest.mark.parametrize("q,ell", [(5, 2), (5, 3), (3, 2), (7, 3)])
def test_coinvariants_additive_over_composition_factors(q, ell):
    F = module_field(q, ell)
    mods = [perm_p1(q, F).module] + [induced_from_borel(q, a, b, F)
                                     for a, b in [(0, 0), (0, 1), (1, 3 % (q - 1))]]
    for M in mods:
        CF = composition_factors(M)
        total = sum(e.multiplicity * coinvariants(e.module).dim for e in CF.entries)
        assert total == coinvariants(M).dim


# -- Hom spaces --------------------------------------------------------------------------

def test_hom_examples():
    V = standard_rep(5)
    S2 = sym_power(V, 2)
    assert hom_space(S2, S2).dim >= 1
    assert hom_space(sym_power(V, 1), S2).dim == 0
    Q = CycField(4)
    assert hom_space(induced_from_borel(5, 0, 1, Q), induced_from_borel(5, 1, 0, Q)).dim == 1


def test_hom_basis_are_intertwiners():
    F = make_field(3, 1)
    M1, M2 = perm_p1(5, F).module, induced_from_borel(5, 0, 0, F)
    H = hom_space(M1, M2)
    assert H.dim == 2
    assert all(is_intertwiner(M1, M2, X) for X in H.basis)


def test_hom_space_needs_same_field():
    with pytest.raises(ValueError):
        hom_space(standard_rep(5), one_dim(5, make_field(5, 2), 0))


# -- relations and homomorphism checks ------------------------------------------------------

def constructor_suite():
    out = []
    for q in (3, 4, 5):
        V = standard_rep(q)
        out += [V, sym_power(V, 3), det_twist(V, 1), dual_rep(V), tensor_rep(V, V)]
        out += [perm_p1(q, make_field(2, 2)).module, induced_from_borel(q, 1, 0, CycField(q - 1))]
        ell = 3 if q % 2 == 0 else 2
        out += [whittaker_mirabolic(q, whittaker_field(q, ell)), restrict(V, "B"),
                restrict(V, "T"), restrict(V, "U"), trivial_rep(q, V.field, "P0")]
    return out


@pytest.mark.parametrize("idx", range(36))
def test_relation_words_and_homomorphism(idx):
    M = constructor_suite()[idx]
    assert relation_test(M)
    assert_homomorphism(M, pairs=60, seed=idx)


def test_zero_module_is_first_class():
    Z = sym_power(standard_rep(5), -1)
    assert relation_test(Z)
    assert hom_space(Z, standard_rep(5)).dim == 0
    assert invariants(Z).dim == 0
