"""Verification harness: one assertion bundle per lemma id.

Every bundle returns a :class:`VerificationReport` whose details list the
individual assertions with their expected and actual values.
"""

import itertools
import random
from dataclasses import dataclass, field as dc_field
from math import gcd

from gmpy2 import mpq

from . import linalg as la
from ._nt import coprime_part, factorize, is_prime, prime_divisors
from .chars import (_tt_label, brauer_character, cusp_labels, cuspidal_character, decompose,
                    decomposition_matrix, elliptic_dl, enumerate_irreducibles,
                    principal_series_character, steinberg_character)
from .gl2 import (conj_classes, group_order, prime_power, regular_classes,
                  semisimple_class_count)
from .meataxe import composition_factors, is_irreducible, iso_test, non_split_check
from .repmod import (coinvariants, det_twist, dual_rep, fixed_space, frob_twist, hom_space,
                     induced_from_borel, module_field, perm_p1, quotient_rep, restrict,
                     standard_rep, sym_power, tensor_rep, whittaker_field, whittaker_mirabolic)
from .weyl import (cartan_weyl_char, dual_weyl_gl2, principal_series_embedding,
                   restricted_irreducible_check, specialized_dimension, sym_trace,
                   weyl_dimension)

LEMMA_IDS = ("1.1", "1.3", "2.ps", "3.dl", "3.2a", "3.2b", "4.tables", "4.1", "4.2",
             "6.1", "6.2", "7.cw", "7.st", "8.1")


@dataclass
class VerificationReport:
    lemma_id: str
    parameters: dict
    status: str = "pass"
    details: list = dc_field(default_factory=list)
    reason: str = ""
    subreports: list = dc_field(default_factory=list)

    def check(self, assertion, expected, actual):
        ok = expected == actual
        self.details.append({"assertion": assertion, "expected": expected, "actual": actual,
                             "ok": ok})
        if not ok:
            self.status = "fail"
        return ok

    @property
    def passed(self):
        return self.status == "pass"

    def failures(self):
        return [d for d in self.details if not d["ok"]]

    def to_json(self):
        out = {"lemma_id": self.lemma_id, "parameters": self.parameters,
               "status": self.status, "details": self.details}
        if self.reason:
            out["reason"] = self.reason
        if self.subreports:
            out["subreports"] = [s.to_json() for s in self.subreports]
        return out


def _skip(lemma_id, params, reason):
    return VerificationReport(lemma_id, params, "skipped", [], reason)


def nontrivial_ells(q):
    """Primes dividing |GL_2(F_q)| other than p."""
    p, _ = prime_power(q)
    return [l for l in prime_divisors(group_order(2, q)) if l != p]


# -- helpers -------------------------------------------------------------------

def iso_collisions(mods):
    """Pairs of isomorphic modules among irreducible ``mods`` (same dimension only)."""
    out = []
    for a, b in itertools.combinations(mods, 2):
        if a.dim == b.dim and iso_test(a, b, irreducible=True):
            out.append((a.name, b.name))
    return out


def mod_p_label(p, j, i):
    """Enumeration label of ``det^j Sym^i`` for GL_2(F_p); None for ``i == -1``."""
    if i == -1:
        return None
    return _tt_label(j % (p - 1), (i,))


def _row_summary(irr, row):
    return sorted((irr[k].label, d) for k, d in enumerate(row) if d)


def brauer_additivity(M, seed=1):
    """True iff the Brauer character of ``M`` is the sum over its composition factors."""
    cf = composition_factors(M, seed)
    total = None
    for e in cf.entries:
        ch = brauer_character(e.module)
        for _ in range(e.multiplicity):
            total = ch if total is None else total + ch
    return brauer_character(M).values == total.values


def seed_independent(M, seeds=(1, 2, 3)):
    runs = [composition_factors(M, s).as_multiset() for s in seeds]
    return all(r == runs[0] for r in runs)


def char_p_corpus(q):
    """Characteristic-p modules of GL_2(F_q) used by the property checks."""
    p, d = prime_power(q)
    F = module_field(q, p)
    V = standard_rep(q, F)
    mods = [V, dual_rep(V), tensor_rep(V, V), perm_p1(q, F).module]
    for i in range(min(p + 2, 8)):
        mods.append(sym_power(V, i))
    mods.append(det_twist(sym_power(V, 2), 1))
    if d > 1:
        mods.append(frob_twist(V))
        mods.append(tensor_rep(V, frob_twist(V)))
    for e1, e2 in [(0, 0), (0, 1), (1, 0), (0, q - 2)]:
        mods.append(induced_from_borel(q, e1 % (q - 1), e2 % (q - 1), F))
    return mods


def char_ell_corpus(q, ell):
    """Characteristic-``ell`` modules (``ell != p``) used by the property checks."""
    F = module_field(q, ell)
    mods = [perm_p1(q, F).module]
    n = q - 1
    for e1 in range(n):
        for e2 in range(e1, n):
            mods.append(induced_from_borel(q, e1, e2, F))
    mods.append(tensor_rep(mods[1], mods[2]) if q <= 5 else mods[1])
    return mods


# -- lemma bundles ---------------------------------------------------------------

def verify_counting(q=None, n=2, p=None, **_):
    q = q or p
    params = {"n": n, "q": q}
    r = VerificationReport("1.1", params)
    expected = q ** (n - 1) * (q - 1)
    if q <= 16 and n <= 4:
        r.check("semisimple count equals enumerated polynomial count",
                expected, semisimple_class_count(n, q, check=True))
    if n != 2:
        return r
    pq, _ = prime_power(q)
    classes = conj_classes(q)
    r.check("semisimple classes (central, split, elliptic)", expected,
            sum(1 for c in classes if c.family != "unipotent"))
    r.check("p-regular classes", expected, len(regular_classes(q, pq)))
    irr = enumerate_irreducibles(q, pq)
    r.check("irreducible mod-p representations", expected, len(irr))
    r.check("iso-test collisions", [], iso_collisions([x.module for x in irr]))
    return r


def verify_twisted_tensors(q=None, p=None, **_):
    q = q or p
    pq, d = prime_power(q)
    r = VerificationReport("1.3", {"q": q})
    irr = enumerate_irreducibles(q, pq)
    r.check("count q(q-1)", q * (q - 1), len(irr))
    expected_dims = sorted(
        _prod(i + 1 for i in digits) for _ in range(q - 1)
        for digits in itertools.product(range(pq), repeat=d))
    r.check("dimensions of twisted tensor products", expected_dims,
            sorted(x.module.dim for x in irr))
    r.check("all irreducible", True, all(is_irreducible(x.module) for x in irr))
    r.check("iso-test collisions", [], iso_collisions([x.module for x in irr]))
    return r


def _prod(it):
    out = 1
    for x in it:
        out *= x
    return out


def verify_ps_symmetry(q=None, ell=None, p=None, **_):
    q = q or p
    ells = [ell] if ell else [l for l in nontrivial_ells(q) if l <= 3]
    r = VerificationReport("2.ps", {"q": q, "ell": ells})
    pq, _ = prime_power(q)
    for l in ells:
        if l == pq:
            continue
        F = module_field(q, l)
        for e1 in range(q - 1):
            for e2 in range(e1 + 1, q - 1):
                a = composition_factors(induced_from_borel(q, e1, e2, F)).as_multiset()
                b = composition_factors(induced_from_borel(q, e2, e1, F)).as_multiset()
                r.check(f"ell={l}: factors of Ps({e1},{e2}) and Ps({e2},{e1}) agree",
                        True, a == b)
    return r


def _is_ell_power(n, ell):
    return coprime_part(n, ell) == 1


def verify_dl_invariance(q=None, ell=None, p=None, **_):
    q = q or p
    ells = [ell] if ell else nontrivial_ells(q)
    r = VerificationReport("3.dl", {"q": q, "ell": ells})
    M = q * q - 1
    for l in ells:
        vals = [elliptic_dl(q, n).restrict(l).values for n in range(M)]
        same = total = others = 0
        witness = None
        for n1 in range(M):
            for n2 in range(M):
                order = M // gcd(n1 - n2, M)
                agree = vals[n1] == vals[n2]
                if _is_ell_power(order, l):
                    total += 1
                    same += agree
                else:
                    others += 1
                    if not agree and witness is None:
                        witness = (n1, n2)
        r.check(f"ell={l}: pairs differing by an ell-power character agree", total, same)
        if others:
            r.check(f"ell={l}: some pair differing by a non-ell-power character disagrees",
                    True, witness is not None)
    return r


def verify_cusp_reduction(q=None, ell=None, p=None, **_):
    q = q or p
    ells = [ell] if ell else nontrivial_ells(q)
    r = VerificationReport("3.2a", {"q": q, "ell": ells})
    for l in ells:
        for a, b in cusp_labels(q):
            d = decompose(cuspidal_character(q, a, b), l)
            r.check(f"ell={l}: Cusp({a},{b}) stays irreducible", [1], [x for x in d if x])
    return r


def verify_st_cuspidal_factor(q=None, ell=None, p=None, **_):
    q = q or p
    ells = [ell] if ell else [l for l in nontrivial_ells(q) if (q + 1) % l == 0]
    params = {"q": q, "ell": ells}
    if not ells or any((q + 1) % l for l in ells):
        return _skip("3.2b", params, "needs ell dividing q+1")
    r = VerificationReport("3.2b", params)
    for l in ells:
        irr = enumerate_irreducibles(q, l)
        d = decompose(steinberg_character(q, 0), l)
        cusp = [irr[k].label for k, m in enumerate(d)
                if m and coinvariants(irr[k].module).dim == 0]
        r.check(f"ell={l}: St has a constituent with zero U-coinvariants", True, bool(cusp))
    return r


def _table_mod_ell(r, p, l):
    D = decomposition_matrix(p, l)
    irr = enumerate_irreducibles(p, l)
    dims = [x.module.dim for x in irr]
    rows = dict(zip(D.rows, D.entries))
    n = p - 1
    npr = coprime_part(n, l)
    for e in range(n):
        r.check(f"ell={l}: 1-dim({e}) stays irreducible", 1, sum(rows[f"1-dim({e})"]))
        st = rows[f"St({e})"]
        got = sorted(dims[k] for k, m in enumerate(st) for _ in range(m))
        want = [1, p - 1] if (p + 1) % l == 0 else [p]
        r.check(f"ell={l}: St({e}) constituent dimensions", want, got)
        if (p + 1) % l == 0:
            one = rows[f"1-dim({e})"]
            r.check(f"ell={l}: St({e}) contains the reduction of 1-dim({e})", True,
                    all(a >= b for a, b in zip(st, one)))
    for e1 in range(n):
        for e2 in range(e1 + 1, n):
            row = rows[f"Ps({e1},{e2})"]
            if (e1 - e2) % npr:
                r.check(f"ell={l}: Ps({e1},{e2}) stays irreducible", 1, sum(row))
            else:
                back = [a + b for a, b in zip(rows[f"1-dim({e1})"], rows[f"St({e1})"])]
                r.check(f"ell={l}: Ps({e1},{e2}) reduces like 1-dim({e1}) + St({e1})", back, row)
    for a, b in cusp_labels(p):
        row = rows[f"Cusp({a},{b})"]
        r.check(f"ell={l}: Cusp({a},{b}) stays irreducible", 1, sum(row))
        r.check(f"ell={l}: Cusp({a},{b}) reduction has dimension >= p-1", True,
                all(dims[k] >= p - 1 for k, m in enumerate(row) if m))


def _table_mod_p(r, p):
    D = decomposition_matrix(p, p)
    rows = dict(zip(D.rows, D.entries))
    n = p - 1
    for e in range(n):
        r.check(f"ell=p: 1-dim({e}) stays irreducible", 1, sum(rows[f"1-dim({e})"]))
        r.check(f"ell=p: St({e}) stays irreducible", 1, sum(rows[f"St({e})"]))
    for e1 in range(n):
        for e2 in range(e1 + 1, n):
            row = rows[f"Ps({e1},{e2})"]
            r.check(f"ell=p: Ps({e1},{e2}) is a sum of 2 irreducibles", [1, 1],
                    [x for x in row if x])
    for a, b in cusp_labels(p):
        row = rows[f"Cusp({a},{b})"]
        want = [1] if a - b == 1 else [1, 1]
        r.check(f"ell=p: Cusp({a},{b}) factor multiplicities", want, [x for x in row if x])


def verify_tables(p=None, q=None, ell=None, **_):
    p = p or q
    if not is_prime(p):
        return _skip("4.tables", {"p": p}, "the tables are stated for GL_2(F_p)")
    ells = [ell] if ell else sorted(prime_divisors(group_order(2, p)))
    r = VerificationReport("4.tables", {"p": p, "ell": ells})
    for l in ells:
        if l == p:
            _table_mod_p(r, p)
        else:
            _table_mod_ell(r, p, l)
    return r


def ps_factor_exponents(p, i1, i2):
    """Expected (sub, quotient) as (det exponent, Sym exponent) pairs."""
    if i2 >= i1:
        return (i1, i2 - i1), (i2, p - 1 - (i2 - i1))
    return (i1, p - 1 - (i1 - i2)), (i2, i1 - i2)


def verify_ps_sequences(p=None, q=None, **_):
    p = p or q
    if not is_prime(p):
        return _skip("4.1", {"p": p}, "the principal-series sequences are stated for GL_2(F_p)")
    r = VerificationReport("4.1", {"p": p})
    irr = enumerate_irreducibles(p, p)
    index = {x.label: k for k, x in enumerate(irr)}
    F = module_field(p, p)
    for i1 in range(p - 1):
        for i2 in range(p - 1):
            if i1 == i2:
                continue
            (j1, s1), (j2, s2) = ps_factor_exponents(p, i1, i2)
            want = sorted([mod_p_label(p, j1, s1), mod_p_label(p, j2, s2)])
            d = decompose(principal_series_character(p, i1, i2), p)
            got = sorted(irr[k].label for k, m in enumerate(d) for _ in range(m))
            r.check(f"Ps({i1},{i2}) factors", want, got)
            P = induced_from_borel(p, i1, i2, F)
            S = irr[index[mod_p_label(p, j1, s1)]].module
            H = hom_space(S, P)
            r.check(f"Ps({i1},{i2}) has a unique copy of the stated sub", 1, H.dim)
            if H.dim != 1:
                continue
            X = H.basis[0]
            r.check(f"Ps({i1},{i2}) sub embeds", S.dim, la.rank(F, X))
            rows, piv = la.rref(F, la.transpose(X))
            Q = quotient_rep(P, rows, piv)
            Qw = irr[index[mod_p_label(p, j2, s2)]].module
            r.check(f"Ps({i1},{i2}) quotient is the stated module", True,
                    iso_test(Q, Qw, irreducible=True))
            r.check(f"Ps({i1},{i2}) sequence is non-split", True, non_split_check(P, rows, piv))
    return r


def cusp_factor_exponents(p, a, b):
    out = []
    if a - b - 2 >= 0:
        out.append((b + 1, a - b - 2))
    out.append((a, p - 1 - (a - b)))
    return out


def verify_cusp_factors(p=None, q=None, **_):
    p = p or q
    if not is_prime(p):
        return _skip("4.2", {"p": p}, "the cuspidal factor formula is stated for GL_2(F_p)")
    r = VerificationReport("4.2", {"p": p})
    irr = enumerate_irreducibles(p, p)
    r.check("Sym^-1 is the zero module", 0, sym_power(standard_rep(p), -1).dim)
    for a, b in cusp_labels(p):
        want = sorted(mod_p_label(p, j, i) for j, i in cusp_factor_exponents(p, a, b))
        d = decompose(cuspidal_character(p, a, b), p)
        got = sorted(irr[k].label for k, m in enumerate(d) for _ in range(m))
        r.check(f"Cusp({a},{b}) Jordan-Holder factors", want, got)
    return r


def verify_fixed_vectors(q=None, p=None, **_):
    q = q or p
    r = VerificationReport("6.1", {"q": q})
    for M in char_p_corpus(q):
        for tag in ("GL2", "B", "U"):
            X = restrict(M, tag)
            r.check(f"{M.name} restricted to {tag} has a U-fixed vector", True,
                    fixed_space(X).shape[1] > 0)
    return r


def verify_ps_quotients(q=None, p=None, **_):
    q = q or p
    pq, _ = prime_power(q)
    r = VerificationReport("6.2", {"q": q})
    F = module_field(q, pq)
    ps = [induced_from_borel(q, e1, e2, F) for e1 in range(q - 1) for e2 in range(q - 1)]
    for x in enumerate_irreducibles(q, pq):
        hit = next((P.name for P in ps if hom_space(P, x.module).dim), None)
        r.check(f"{x.label} is a quotient of a principal series", True, hit is not None)
    return r


def verify_cartan_weyl(seed=0, **_):
    r = VerificationReport("7.cw", {"seed": seed})
    rng = random.Random(seed)
    for _ in range(20):
        l2 = rng.randint(-3, 3)
        l1 = l2 + rng.randint(0, 10)
        t1 = mpq(rng.randint(-9, 9) or 1, rng.randint(1, 5))
        t2 = t1
        while t2 == t1:
            t2 = mpq(rng.randint(-9, 9) or 1, rng.randint(1, 5))
        r.check(f"lambda=({l1},{l2}), t=({t1},{t2}): bialternant equals Sym trace",
                str(sym_trace((l1, l2), (t1, t2))), str(cartan_weyl_char((l1, l2), (t1, t2))))
    for lam, want in [((3, 0), 4), ((1, 0, 0), 3), ((2, 1, 0), 8), ((5, 2), 4), ((2, 0, 0), 6)]:
        r.check(f"weyl dimension of {lam}", want, weyl_dimension(lam))
        r.check(f"principal specialization of {lam}", want, specialized_dimension(lam))
    return r


def verify_restricted_weights(p=None, q=None, **_):
    p = p or q
    if not is_prime(p) or p > 13:
        return _skip("7.st", {"p": p}, "needs a prime p <= 13")
    r = VerificationReport("7.st", {"p": p})
    mods = restricted_irreducible_check(p)
    r.check("restricted irreducibles count", p * (p - 1), len(mods))
    F = module_field(p, p)
    for l1 in range(p):
        for l2 in range(l1 + 1):
            r.check(f"dual Weyl module ({l1},{l2}) dimension", weyl_dimension((l1, l2)),
                    dual_weyl_gl2((l1, l2), F).dim)
    if p <= 7:
        for i1 in range(p):
            for i2 in range(i1, p):
                hd, rk = principal_series_embedding(p, i1, i2)
                r.check(f"det^{i1} Sym^{i2 - i1} embeds in Ps({i1},{i2})", i2 - i1 + 1, rk)
    if p in (3, 5):
        cf = composition_factors(dual_weyl_gl2((p, 0), F))
        r.check(f"Sym^{p} has two composition factors", 2, len(cf))
    return r


def verify_whittaker(q=None, ell=None, p=None, **_):
    q = q or p
    pq, _ = prime_power(q)
    ells = [ell] if ell else [l for l in (2, 3) if l != pq]
    params = {"q": q, "ell": ells}
    if any(l == pq for l in ells):
        return _skip("8.1", params, "psi is trivial in characteristic p")
    r = VerificationReport("8.1", params)
    for l in ells:
        W = whittaker_mirabolic(q, whittaker_field(q, l))
        r.check(f"ell={l}: Whittaker module dimension", q - 1, W.dim)
        r.check(f"ell={l}: Whittaker module is irreducible for P0", True, is_irreducible(W))
    return r


BUNDLES = {
    "1.1": verify_counting, "1.3": verify_twisted_tensors, "2.ps": verify_ps_symmetry,
    "3.dl": verify_dl_invariance, "3.2a": verify_cusp_reduction,
    "3.2b": verify_st_cuspidal_factor, "4.tables": verify_tables,
    "4.1": verify_ps_sequences, "4.2": verify_cusp_factors, "6.1": verify_fixed_vectors,
    "6.2": verify_ps_quotients, "7.cw": verify_cartan_weyl, "7.st": verify_restricted_weights,
    "8.1": verify_whittaker,
}


def _sweep_params(lemma_id, max_p):
    primes = [p for p in range(2, max_p + 1) if is_prime(p)]
    qs = [q for q in range(2, max_p + 1) if len(factorize(q)) == 1]
    if lemma_id in ("4.tables", "4.1", "4.2", "7.st"):
        return [{"p": p} for p in primes if p > 2 or lemma_id in ("4.tables", "7.st")]
    if lemma_id == "7.cw":
        return [{}]
    if lemma_id in ("1.1", "1.3", "6.1", "6.2"):
        return [{"q": q} for q in qs]
    if lemma_id == "3.2b":
        return [{"q": q, "ell": l} for q in qs for l in nontrivial_ells(q) if (q + 1) % l == 0]
    if lemma_id == "8.1":
        return [{"q": q, "ell": l} for q in qs for l in (2, 3) if q % l]
    return [{"q": q, "ell": l} for q in qs for l in nontrivial_ells(q) if l <= 3]


def verify_lemma(lemma_id, **params):
    """Run one bundle; ``lemma_id == "all"`` sweeps every bundle up to ``max_p``."""
    if lemma_id == "all":
        max_p = params.get("max_p") or 7
        subs = [BUNDLES[lid](**kw) for lid in LEMMA_IDS for kw in _sweep_params(lid, max_p)]
        r = VerificationReport("all", {"max_p": max_p})
        for s in subs:
            r.check(f"{s.lemma_id} {emit_params(s.parameters)}",
                    s.status if s.status == "skipped" else "pass", s.status)
        r.subreports = subs
        return r
    if lemma_id not in BUNDLES:
        raise KeyError(lemma_id)
    params = {k: v for k, v in params.items() if v is not None}
    try:
        return BUNDLES[lemma_id](**params)
    except TypeError as exc:
        return _skip(lemma_id, params, str(exc))


def emit_params(params):
    return ",".join(f"{k}={v}" for k, v in sorted(params.items()))
