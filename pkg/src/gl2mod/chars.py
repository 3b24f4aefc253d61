"""Ordinary, Deligne-Lusztig and Brauer characters of GL_2(F_q).

Characters of F_q^x and F_{q^2}^x are given by integer exponents against
the fixed field generators: ``theta_e(g^a) = zeta^(a e)``.  Ordinary
character values live in Q(zeta_{q^2-1}); Brauer characters use the
conductor ``prime_to_ell_exponent(q, ell)``.
"""

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd
from typing import NamedTuple

import numpy as np
from gmpy2 import mpq

from . import linalg as la
from ._nt import coprime_part, is_prime, lcm, prime_divisors
from .cyclo import CycNum, _power_basis_table, cyc_conj, rational_combination
from .ff import embed_table, make_field
from .gl2 import (ell_part, gl2, is_regular_class, prime_power, prime_to_ell_exponent,
                  regular_classes)
from .repmod import (MatRep, coinvariants, det_twist, frob_twist, induced_from_borel,
                     module_field, splitting_degree, standard_rep,
                     subgroup_elements, subgroup_order, sym_power, tensor_rep)


class EnumerationIncomplete(RuntimeError):
    pass


@dataclass
class ClassFunction:
    """Exact values on a list of conjugacy classes.

    ``ell is None`` means support on all classes; otherwise the support is
    the ``ell``-regular classes.  ``roots`` optionally keeps each value as a
    list of ``(exponent, coefficient)`` pairs against ``zeta_{root_N}``,
    which the fast inner-product routines use.
    """

    q: int
    classes: list
    values: list
    label: str
    ell: int = None
    virtual: bool = False
    roots: list = dc_field(default=None, repr=False)
    root_N: int = None

    @property
    def degree(self):
        return self.values[0]

    @property
    def support(self):
        return "all" if self.ell is None else "regular"

    def value(self, label):
        for c, v in zip(self.classes, self.values):
            if c.label == label:
                return v
        raise KeyError(label)

    def as_dict(self):
        return {c.label: v for c, v in zip(self.classes, self.values)}

    def restrict(self, ell):
        """Restriction to the ``ell``-regular classes."""
        keep = [i for i, c in enumerate(self.classes) if is_regular_class(c, ell)]
        roots = [self.roots[i] for i in keep] if self.roots is not None else None
        return ClassFunction(self.q, [self.classes[i] for i in keep],
                             [self.values[i] for i in keep], self.label, ell,
                             self.virtual, roots, self.root_N)

    def __eq__(self, other):
        return (isinstance(other, ClassFunction) and self.q == other.q
                and [c.label for c in self.classes] == [c.label for c in other.classes]
                and all(a == b for a, b in zip(self.values, other.values)))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def _combine(self, other, sign):
        assert [c.label for c in self.classes] == [c.label for c in other.classes]
        vals = [a + b if sign > 0 else a - b for a, b in zip(self.values, other.values)]
        roots = None
        if self.roots is not None and other.roots is not None and self.root_N == other.root_N:
            roots = [list(r1) + [(e, sign * c) for e, c in r2]
                     for r1, r2 in zip(self.roots, other.roots)]
        return ClassFunction(self.q, self.classes, vals, "virtual", self.ell, True, roots,
                             self.root_N)

    def __neg__(self):
        roots = None
        if self.roots is not None:
            roots = [[(e, -c) for e, c in r] for r in self.roots]
        return ClassFunction(self.q, self.classes, [-v for v in self.values], self.label,
                             self.ell, True, roots, self.root_N)


def _from_roots(q, classes, roots, N, label, virtual=False):
    vals = [CycNum.from_exponents(N, _merge(r)) for r in roots]
    return ClassFunction(q, classes, vals, label, None, virtual, roots, N)


def _merge(terms):
    out = defaultdict(int)
    for e, c in terms:
        out[e] += c
    return dict(out)


# -- inner products -------------------------------------------------------------

def inner_product(chi, psi):
    """``(1/|G|) sum_g chi(g) conj(psi(g))`` over the common support."""
    G = gl2(chi.q)
    if chi.roots is not None and psi.roots is not None and chi.root_N == psi.root_N:
        acc = defaultdict(int)
        N = chi.root_N
        for c, r1, r2 in zip(chi.classes, chi.roots, psi.roots):
            for e1, c1 in r1:
                for e2, c2 in r2:
                    acc[(e1 - e2) % N] += c.size * c1 * c2
        return CycNum.from_exponents(N, acc) / G.order
    tot = CycNum.rational(0)
    for c, a, b in zip(chi.classes, chi.values, psi.values):
        tot = tot + a * cyc_conj(b) * c.size
    return tot / G.order


def _gram(E, W, weights, N):
    """Exact Gram matrix for root-sum data.

    ``E``/``W`` have shape (rows, cols, T): exponents and integer
    coefficients of ``zeta_N``.  Returns an integer array (rows, rows, phi(N))
    of power-basis coordinates of ``sum_c weights[c] x_i(c) conj(x_j(c))``.
    """
    n, C, T = E.shape
    acc = np.zeros(n * n * N, dtype=np.float64)
    chunk = max(1, 2_000_000 // max(1, n * n * T * T))
    ii = np.arange(n)[:, None, None, None, None]
    jj = np.arange(n)[None, :, None, None, None]
    for c0 in range(0, C, chunk):
        cs = slice(c0, min(C, c0 + chunk))
        Ei = E[:, None, cs, :, None]
        Ej = E[None, :, cs, None, :]
        Wi = W[:, None, cs, :, None]
        Wj = W[None, :, cs, None, :]
        w = weights[cs][None, None, :, None, None]
        idx = ((ii * n + jj) * N + (Ei - Ej) % N)
        vals = (w * Wi * Wj).astype(np.float64)
        idx, vals = np.broadcast_arrays(idx, vals)
        acc += np.bincount(idx.ravel(), weights=vals.ravel(), minlength=n * n * N)
    G = np.rint(acc).astype(np.int64).reshape(n * n, N)
    R = np.array(_power_basis_table(N).tolist(), dtype=np.int64)
    return (G @ R).reshape(n, n, -1)


def _root_arrays(chars):
    T = max(len(r) for ch in chars for r in ch.roots)
    n, C = len(chars), len(chars[0].classes)
    E = np.zeros((n, C, T), dtype=np.int64)
    W = np.zeros((n, C, T), dtype=np.int64)
    for i, ch in enumerate(chars):
        for c, r in enumerate(ch.roots):
            for t, (e, co) in enumerate(r):
                E[i, c, t] = e
                W[i, c, t] = int(co)
    return E, W


class OrthogonalityReport(NamedTuple):
    rows_ok: bool
    cols_ok: bool
    degree_sum_ok: bool


def orthogonality(q, table=None):
    """Exact row and column orthogonality of the ordinary table."""
    table = table or ordinary_table(q)
    G = gl2(q)
    N = table[0].root_N
    E, W = _root_arrays(table)
    sizes = np.array([c.size for c in table[0].classes], dtype=np.int64)
    rows = _gram(E, W, sizes, N)
    expect = np.zeros_like(rows)
    expect[np.arange(len(table)), np.arange(len(table)), 0] = G.order
    rows_ok = bool(np.array_equal(rows, expect))
    Et = np.ascontiguousarray(E.transpose(1, 0, 2))
    Wt = np.ascontiguousarray(W.transpose(1, 0, 2))
    cols = _gram(Et, Wt, np.ones(len(table), dtype=np.int64), N)
    expect = np.zeros_like(cols)
    C = len(sizes)
    for c in range(C):
        expect[c, c, 0] = G.order // int(sizes[c])
    cols_ok = bool(np.array_equal(cols, expect))
    deg = sum(int(ch.degree.to_rational()) ** 2 for ch in table)
    return OrthogonalityReport(rows_ok, cols_ok, deg == G.order)


# -- ordinary characters ---------------------------------------------------------

@lru_cache(maxsize=16)
def _borel_profile(q):
    """For each class, a Counter of (log b11, log b22) over B meet class."""
    G = gl2(q)
    F = G.F
    prof = [Counter() for _ in G.classes]
    for g in subgroup_elements(q, "B"):
        prof[G.classify(g)][(F.log(g[0]), F.log(g[3]))] += 1
    return prof


def induced_character(H, psi, q):
    """Character of Ind_H^G psi by the induction formula.

    ``psi`` is a callable on elements of ``H`` returning :class:`CycNum`
    (or an integer), i.e. a class function of ``H`` given pointwise.
    """
    G = gl2(q)
    sums = [CycNum.rational(0) for _ in G.classes]
    for h in subgroup_elements(q, H):
        v = psi(h)
        sums[G.classify(h)] = sums[G.classify(h)] + v
    hord = subgroup_order(q, H)
    vals = [s * mpq(G.order, hord * c.size) for s, c in zip(sums, G.classes)]
    return ClassFunction(q, G.classes, vals, f"Ind_{H}")


def _ps_roots(q, e1, e2):
    """Induced character of (e1, e2) from B, as root sums in zeta_{q^2-1}."""
    G = gl2(q)
    M = q * q - 1
    hord = subgroup_order(q, "B")
    out = []
    for c, prof in zip(G.classes, _borel_profile(q)):
        acc = defaultdict(int)
        for (i, j), cnt in prof.items():
            acc[(e1 * i + e2 * j) * (q + 1) % M] += cnt
        terms = []
        for e, cnt in sorted(acc.items()):
            val = mpq(G.order * cnt, hord * c.size)
            assert val.denominator == 1
            terms.append((e, int(val)))
        out.append(terms)
    return out


def _det_roots(q, e):
    M = q * q - 1
    out = []
    for c in gl2(q).classes:
        if c.family in ("central", "unipotent"):
            a = 2 * c.exps[0]
        elif c.family == "split":
            a = c.exps[0] + c.exps[1]
        else:
            a = c.exps[0]  # N(x) = g_q^t for x = g_{q^2}^t
        out.append([(a * e * (q + 1) % M, 1)])
    return out


def principal_series_character(q, e1, e2):
    G = gl2(q)
    return _from_roots(q, G.classes, _ps_roots(q, e1, e2), q * q - 1, f"Ps({e1},{e2})")


def one_dim_character(q, e):
    G = gl2(q)
    return _from_roots(q, G.classes, _det_roots(q, e), q * q - 1, f"1-dim({e})")


def steinberg_character(q, e):
    """Ind(e, e) minus the one-dimensional character ``det^e``."""
    ch = principal_series_character(q, e, e) - one_dim_character(q, e)
    ch.label = f"St({e})"
    ch.virtual = False
    return ch


def _elliptic_roots(q, n):
    M = q * q - 1
    out = []
    for c in gl2(q).classes:
        if c.family == "central":
            out.append([(n * (q + 1) * c.exps[0] % M, q - 1)])
        elif c.family == "unipotent":
            out.append([(n * (q + 1) * c.exps[0] % M, -1)])
        elif c.family == "split":
            out.append([])
        else:
            t = c.exps[0]
            out.append([(n * t % M, -1), (n * q * t % M, -1)])
    return out


def is_regular_elliptic(q, n):
    M = q * q - 1
    return (n - q * n) % M != 0


def elliptic_dl(q, n, dl_normalized=False):
    """Elliptic Deligne-Lusztig character for ``theta_n``.

    Values: ``(q-1) theta(z)`` on central, ``-theta(z)`` on unipotent,
    ``0`` on split and ``-(theta(x) + theta(x^q))`` on elliptic classes.
    For regular ``theta_n`` this is the cuspidal character; the
    Deligne-Lusztig sign convention (``dl_normalized=True``) negates it.
    """
    G = gl2(q)
    virtual = dl_normalized or not is_regular_elliptic(q, n)
    ch = _from_roots(q, G.classes, _elliptic_roots(q, n), q * q - 1, f"R_T({n})", virtual)
    if dl_normalized:
        ch = -ch
        ch.label = f"R_T({n})"
    return ch


def cusp_labels(q):
    """Canonical cuspidal labels ``(a, b)``, ``q > a > b >= 0``, ``n = a + q b``."""
    return [(a, b) for a in range(q) for b in range(a)]


def cuspidal_character(q, a, b):
    ch = elliptic_dl(q, a + q * b)
    ch.label = f"Cusp({a},{b})"
    return ch


@lru_cache(maxsize=16)
def ordinary_table(q):
    """All ``q^2 - 1`` ordinary irreducible characters, in canonical order.

    Order: ``1-dim(e)``, ``St(e)``, ``Ps(e1,e2)`` (``e1 < e2``), ``Cusp(a,b)``.
    """
    if q > 32:
        raise ValueError("ordinary_table supports q <= 32")
    n = q - 1
    out = [one_dim_character(q, e) for e in range(n)]
    out += [steinberg_character(q, e) for e in range(n)]
    out += [principal_series_character(q, e1, e2) for e1 in range(n) for e2 in range(e1 + 1, n)]
    out += [cuspidal_character(q, a, b) for a, b in cusp_labels(q)]
    return tuple(out)


def ordinary_character(q, label):
    for ch in ordinary_table(q):
        if ch.label == label:
            return ch
    raise KeyError(label)


# -- Brauer characters -----------------------------------------------------------

def brauer_field(q, F):
    """Extension of ``F`` containing the roots of unity of order ``(q^2-1)'``."""
    ell = F.p
    return make_field(ell, lcm(F.k, splitting_degree(q, ell)))


def _to_field(A, F, K):
    if F == K:
        return A
    tab = embed_table(F, K)
    return la.from_ints(K, tab[la.to_ints(F, A)])


def _minpoly_roots_in_mu(K, A, m, rng):
    """Eigenvalue exponents ``j`` (``lam = zeta_m^j`` in K) seen by a random vector."""
    from .meataxe import _vector_minpoly
    n = A.shape[1]
    v = la.from_ints(K, rng.integers(0, K.q, size=(1, n)))[:, 0, :]
    if not v.any():
        return set()
    coeffs = _vector_minpoly(K, A, v)
    step = (K.q - 1) // m
    cands = np.array([K.exp(j * step) for j in range(m)], dtype=np.int64)
    acc = np.zeros(m, dtype=np.int64)
    for c in reversed(coeffs):
        acc = K.vadd(K.vmul(acc, cands), np.full(m, c, dtype=np.int64))
    return {int(j) for j in np.nonzero(acc == 0)[0]}


def _eigen_multiplicities(K, A, m, rng, extra=None):
    """Multiplicities of the eigenvalues ``zeta_m^j`` of a diagonalizable ``A``.

    With ``extra`` (a list of (matrix, scalar-exponent) constraints) the
    nullity is of the stacked system, restricting to a joint eigenspace
    whose total dimension is ``extra_dim``.
    """
    n = A.shape[1]
    I = la.eye(K, n)
    step = (K.q - 1) // m
    mult = {}
    tried = set()
    for _ in range(40):
        if sum(mult.values()) == n:
            return mult
        for j in sorted(_minpoly_roots_in_mu(K, A, m, rng) - tried):
            tried.add(j)
            lam = K.exp(j * step)
            nl = la.nullity(K, (A - la.smul(K, lam, I)) % K.p)
            if nl:
                mult[j] = nl
    if sum(mult.values()) != n:
        raise AssertionError("eigenvalue multiplicities do not sum to the dimension")
    return mult


def _joint_multiplicities(K, A, B, m, rng, total):
    """Joint eigen-multiplicities of commuting diagonalizable ``A``, ``B``."""
    n = A.shape[1]
    I = la.eye(K, n)
    step = (K.q - 1) // m
    ma = _eigen_multiplicities(K, A, m, rng)
    mb = _eigen_multiplicities(K, B, m, rng)
    out = {}
    for ja, na in ma.items():
        Aa = (A - la.smul(K, K.exp(ja * step), I)) % K.p
        got = 0
        for jb in sorted(mb):
            Bb = (B - la.smul(K, K.exp(jb * step), I)) % K.p
            nl = la.nullity(K, np.concatenate([Aa, Bb], axis=1))
            if nl:
                out[(ja, jb)] = nl
                got += nl
                if got == na:
                    break
        if got != na:
            raise AssertionError("joint eigenspaces do not fill an eigenspace")
    return out


class _EigenData(NamedTuple):
    N: int
    m1: int
    m2: int
    L: int
    L2: int
    torus: dict
    elliptic: dict
    unip: dict


def _eigen_data(M, seed=0):
    hit = M._cache.get("eigen")
    if hit is not None:
        return hit
    q = M.q
    G = gl2(q)
    F = M.field
    ell = F.p
    p = G.p
    K = brauer_field(q, F)
    rng = np.random.default_rng(seed)
    L = ell_part(q - 1, ell)
    L2 = ell_part(q * q - 1, ell)
    m1 = (q - 1) // L
    m2 = (q * q - 1) // L2
    gL = G.F.exp(L)
    n = M.dim
    h1 = _to_field(M.image((gL, 0, 0, 1)), F, K)
    h2 = _to_field(M.image((1, 0, 0, gL)), F, K)
    torus = _joint_multiplicities(K, h1, h2, m1, rng, n)
    x = G.F2.gen
    xq = G.F2.pow(x, q)
    from .ff import restrict_value
    tr = restrict_value(G.F2.add(x, xq), G.F2, G.F)
    nm = restrict_value(G.F2.mul(x, xq), G.F2, G.F)
    C = (0, G.F.neg(nm), 1, tr)
    x0 = _to_field(M.image(G.power(C, L2)), F, K)
    elliptic = _eigen_multiplicities(K, x0, m2, rng)
    unip = {}
    if ell != p:
        c0 = _to_field(M.image((gL, 0, 0, gL)), F, K)
        U = _to_field(M.image((1, 1, 0, 1)), F, K)
        I = la.eye(K, n)
        cm = _eigen_multiplicities(K, c0, m1, rng)
        step = (K.q - 1) // m1
        Um = (U - I) % K.p
        for j, nj in cm.items():
            Cj = (c0 - la.smul(K, K.exp(j * step), I)) % K.p
            fixed = la.nullity(K, np.concatenate([Cj, Um], axis=1))
            rest = nj - fixed
            if rest % (p - 1):
                raise AssertionError("unipotent eigenvalue multiplicities are not balanced")
            unip[j] = fixed - rest // (p - 1)
    N = prime_to_ell_exponent(q, ell)
    data = _EigenData(N, m1, m2, L, L2, torus, elliptic, unip)
    M._cache["eigen"] = data
    return data


def brauer_character(M):
    """Brauer character of a characteristic-``ell`` GL_2(F_q)-module.

    Eigenvalue multiplicities (by nullity) are computed for the generators
    of the ``ell``-regular parts of the split torus, the elliptic torus and
    the centre (jointly with a transvection); every ``ell``-regular class
    meets one of these, and the lifted eigenvalues give the values.
    """
    if M.group_tag != "GL2":
        raise ValueError("Brauer characters are computed for GL2-modules")
    hit = M._cache.get("brauer")
    if hit is not None:
        return hit
    q = M.q
    ell = M.field.p
    classes = regular_classes(q, ell)
    if M.dim == 0:
        vals = [CycNum.rational(0) for _ in classes]
        ch = ClassFunction(q, classes, vals, M.name, ell)
        M._cache["brauer"] = ch
        return ch
    d = _eigen_data(M)
    N = d.N
    f1 = N // d.m1
    f2 = N // d.m2
    vals = []
    for c in classes:
        acc = defaultdict(int)
        if c.family == "central":
            s = c.exps[0] // d.L
            for (j1, j2), nm in d.torus.items():
                acc[(j1 + j2) * s * f1] += nm
        elif c.family == "unipotent":
            s = c.exps[0] // d.L
            for j, nm in d.unip.items():
                acc[j * s * f1] += nm
        elif c.family == "split":
            s1, s2 = c.exps[0] // d.L, c.exps[1] // d.L
            for (j1, j2), nm in d.torus.items():
                acc[(j1 * s1 + j2 * s2) * f1] += nm
        else:
            s = c.exps[0] // d.L2
            for j, nm in d.elliptic.items():
                acc[j * s * f2] += nm
        vals.append(CycNum.from_exponents(N, acc))
    ch = ClassFunction(q, classes, vals, M.name, ell)
    M._cache["brauer"] = ch
    return ch


def _canon(v, N):
    return tuple((int(c.numerator), int(c.denominator)) for c in v.raise_to(N).coords())


def fingerprint(M):
    """Hashable, ordered Brauer fingerprint used in composition-factor labels.

    GL2-modules use the full Brauer character.  Modules for subgroups use
    the eigenvalue multiplicities of the ``ell``-regular torus elements in
    the subgroup (a partial invariant).
    """
    if M.group_tag == "GL2":
        ch = brauer_character(M)
        N = prime_to_ell_exponent(M.q, M.field.p)
        return tuple(_canon(v, N) for v in ch.values)
    if M.dim == 0 or M.group_tag == "U":
        return ()
    hit = M._cache.get("fp")
    if hit is not None:
        return hit
    q = M.q
    G = gl2(q)
    F = M.field
    K = brauer_field(q, F)
    L = ell_part(q - 1, F.p)
    m1 = (q - 1) // L
    gL = G.F.exp(L)
    rng = np.random.default_rng(0)
    h1 = _to_field(M.image((gL, 0, 0, 1)), F, K)
    if M.group_tag == "P0":
        fp = tuple(sorted(_eigen_multiplicities(K, h1, m1, rng).items()))
    else:
        h2 = _to_field(M.image((1, 0, 0, gL)), F, K)
        fp = tuple(sorted(_joint_multiplicities(K, h1, h2, m1, rng, M.dim).items()))
    M._cache["fp"] = fp
    return fp


# -- irreducible modular representations -------------------------------------------

@dataclass
class Irreducible:
    label: str
    module: MatRep
    brauer: ClassFunction


def _twisted_tensor_labels(q):
    p, d = prime_power(q)
    for j in range(q - 1):
        for digits in itertools.product(range(p), repeat=d):
            yield j, digits


def twisted_tensor_module(q, j, digits, F=None):
    """``det^j`` tensor the product over m of ``Fr^m(Sym^{i_m} V)``."""
    V = standard_rep(q, F)
    M = None
    for m, i in enumerate(digits):
        X = frob_twist(sym_power(V, i), m)
        M = X if M is None else tensor_rep(M, X)
    M = det_twist(M, j)
    M.name = _tt_label(j, digits)
    return M


def _tt_label(j, digits):
    parts = [f"det^{j}"]
    for m, i in enumerate(digits):
        if i == 0:
            continue
        parts.append(f"Sym^{i}" if m == 0 else f"Fr^{m}(Sym^{i})")
    return "*".join(parts)


def _enumerate_mod_p(q):
    from .meataxe import find_submodule
    out = []
    seen = {}
    for j, digits in _twisted_tensor_labels(q):
        M = twisted_tensor_module(q, j, digits)
        if find_submodule(M).kind != "irreducible":
            raise AssertionError(f"{M.name} is not irreducible")
        ch = brauer_character(M)
        fp = fingerprint(M)
        if fp in seen:
            raise AssertionError(f"{M.name} is isomorphic to {seen[fp]}")
        seen[fp] = M.name
        out.append(Irreducible(M.name, M, ch))
    if len(out) != q * (q - 1):
        raise EnumerationIncomplete(f"found {len(out)} irreducibles")
    return out


def _modp_prime(N):
    P = (2**31 - 1) // N * N + 1
    while P > N:
        if is_prime(P):
            return P
        P -= N
    raise ValueError("no prime found")


def _modp_root(P, N):
    for g in range(2, P):
        w = pow(g, (P - 1) // N, P)
        if all(pow(w, N // r, P) != 1 for r in prime_divisors(N)) if N > 1 else True:
            return w
    raise ValueError("no root of unity found")


class _ModpSpan:
    """Row span over F_P of Brauer characters under ``zeta_N -> omega``."""

    def __init__(self, N):
        self.N = N
        self.P = _modp_prime(N)
        self.w = _modp_root(self.P, N)
        self.rows = []
        self.piv = []

    def image(self, ch):
        out = []
        P = self.P
        for v in ch.values:
            v = v.raise_to(self.N) if self.N % v.N == 0 else v.raise_to(lcm(v.N, self.N))
            f = v.N // self.N if v.N != self.N else 1
            acc = 0
            for k, c in v.terms.items():
                if k % f:
                    raise ValueError("value outside Q(zeta_N)")
                num = int(c.numerator) % P
                den = pow(int(c.denominator), -1, P)
                acc = (acc + num * den * pow(self.w, k // f, P)) % P
            out.append(acc)
        return np.array(out, dtype=np.int64)

    def reduce(self, v):
        v = v.copy()
        for r, c in zip(self.rows, self.piv):
            if v[c]:
                v = (v - v[c] * r) % self.P
        return v

    def add(self, v):
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if len(nz) == 0:
            return False
        c = int(nz[0])
        v = v * pow(int(v[c]), -1, self.P) % self.P
        self.rows.append(v)
        self.piv.append(c)
        return True

    def contains(self, v):
        return not self.reduce(v).any()


def _enumerate_mod_ell(q, ell, seed=1):
    from .meataxe import composition_factors
    p, _ = prime_power(q)
    F = module_field(q, ell)
    target = len(regular_classes(q, ell))
    N = prime_to_ell_exponent(q, ell)
    span = _ModpSpan(N)
    found = {}
    images = {}

    def absorb(M):
        for e in composition_factors(M, seed).entries:
            if e.label in found:
                continue
            X = e.module
            ch = brauer_character(X)
            img = span.image(ch)
            span.add(img)
            images[e.label] = img
            found[e.label] = X

    mp = coprime_part(q - 1, ell)
    for e1 in range(mp):
        for e2 in range(e1, mp):
            absorb(induced_from_borel(q, e1, e2, F))
    tried = set()
    while len(found) < target:
        labels = sorted(found, key=lambda lb: (lb[0], lb))
        best = None
        for i, a in enumerate(labels):
            for b in labels[i:]:
                key = (a, b)
                if key in tried or a[0] * b[0] < 2:
                    continue
                prod = images[a] * images[b] % span.P
                if not span.contains(prod):
                    cand = (a[0] * b[0], i, key)
                    if best is None or cand < best:
                        best = cand
        if best is None:
            raise EnumerationIncomplete(
                f"enumeration stalled with {len(found)} of {target} irreducibles")
        _, _, (a, b) = best
        tried.add((a, b))
        absorb(tensor_rep(found[a], found[b]))
    labels = sorted(found, key=lambda lb: (lb[0], lb))
    out = []
    for idx, lb in enumerate(labels):
        X = found[lb]
        X.name = f"irr{idx}[dim {lb[0]}]"
        ch = brauer_character(X)
        ch.label = X.name
        out.append(Irreducible(X.name, X, ch))
    return out


@lru_cache(maxsize=64)
def _enumerate_cached(q, ell):
    p, _ = prime_power(q)
    if ell == p:
        if q > 25:
            raise ValueError("mod-p enumeration supports q <= 25")
        return tuple(_enumerate_mod_p(q))
    if q > 13:
        raise ValueError("mod-ell enumeration supports q <= 13")
    return tuple(_enumerate_mod_ell(q, ell))


def enumerate_irreducibles(q, ell):
    """All irreducible GL_2(F_q)-modules in characteristic ``ell``, canonically ordered."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    return list(_enumerate_cached(q, ell))


# -- decomposition -------------------------------------------------------------------

def decompose(chi, ell):
    """Multiplicities of the irreducible Brauer characters in ``chi`` mod ``ell``."""
    irr = enumerate_irreducibles(chi.q, ell)
    target = chi.restrict(ell) if chi.ell is None else chi
    cols = [x.brauer.values for x in irr]
    sol = rational_combination(cols, target.values)
    if sol.status != "unique":
        raise ArithmeticError(f"decomposition of {chi.label} mod {ell}: {sol.status}")
    out = []
    for d in sol.x:
        if d.denominator != 1 or d < 0:
            raise ArithmeticError(f"decomposition of {chi.label} mod {ell} is not a character")
        out.append(int(d))
    return out


@dataclass
class DecompositionMatrix:
    q: int
    ell: int
    rows: list
    cols: list
    entries: list

    def row(self, label):
        return self.entries[self.rows.index(label)]

    def is_permutation(self):
        A = np.array(self.entries)
        return (A.shape[0] == A.shape[1] and set(np.unique(A)) <= {0, 1}
                and (A.sum(axis=0) == 1).all() and (A.sum(axis=1) == 1).all())


def decomposition_matrix(q, ell):
    irr = enumerate_irreducibles(q, ell)
    table = ordinary_table(q)
    entries = [decompose(ch, ell) for ch in table]
    return DecompositionMatrix(q, ell, [ch.label for ch in table], [x.label for x in irr], entries)


def dl_reduction_invariance(q, ell, n1, n2):
    """True iff the elliptic DL characters of ``theta_n1`` and ``theta_n2`` agree mod ``ell``.

    Requires ``theta_n1 / theta_n2`` to have ``ell``-power order.
    """
    M = q * q - 1
    order = M // gcd(n1 - n2, M)
    if coprime_part(order, ell) != 1:
        raise ValueError("theta / theta' must have ell-power order")
    return values_agree_mod(q, ell, n1, n2)


def values_agree_mod(q, ell, n1, n2):
    a = elliptic_dl(q, n1).restrict(ell)
    b = elliptic_dl(q, n2).restrict(ell)
    return all(x == y for x, y in zip(a.values, b.values))


def coinvariant_dim(M):
    return coinvariants(M).dim
