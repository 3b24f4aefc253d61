"""MeatAxe: submodules, irreducibility certificates and composition factors.

The search follows Holt and Rees: a random element ``A`` of the enveloping
algebra with an eigenvalue ``lam`` in the coefficient field gives the
kernel ``N = ker(A - lam)``.  A vector of ``N`` spinning to a proper
subspace is a submodule.  Otherwise a vector of ``ker(A - lam)^T`` is spun
under the dual action; a proper result has a proper annihilator.  If both
spins fill the space and ``N`` is one-dimensional, Norton's criterion
proves irreducibility.
"""

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg as la
from .repmod import MatRep, hom_space, quotient_rep, spin, sub_rep

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MAX_ATTEMPTS = 200
MAX_DIM = 400


class LCG:
    """64-bit linear congruential generator (Knuth's MMIX constants)."""

    def __init__(self, seed):
        self.state = seed % (1 << 64)

    def next(self):
        self.state = (self.state * MULTIPLIER + INCREMENT) % (1 << 64)
        return self.state

    def randint(self, n):
        """Uniform-ish integer in ``[0, n)`` from the high bits."""
        return (self.next() >> 33) % n


class Inconclusive(RuntimeError):
    pass


def random_algebra_element(M, rng):
    """A random element of the enveloping algebra of ``M``.

    A sum of 3 to 6 words of length 1 to 8 in the generator images, each
    with a random nonzero coefficient.  ``rng`` is an :class:`LCG` or a seed.
    """
    if not isinstance(rng, LCG):
        rng = LCG(rng)
    F = M.field
    n = M.dim
    out = la.zeros(F, n, n)
    if n == 0:
        return out
    for _ in range(3 + rng.randint(4)):
        length = 1 + rng.randint(8)
        W = M.gens[rng.randint(len(M.gens))]
        for _ in range(length - 1):
            W = la.matmul(F, W, M.gens[rng.randint(len(M.gens))])
        c = 1 + rng.randint(F.q - 1)
        out = (out + la.smul(F, c, W)) % F.p
    return out


def _poly_roots(F, coeffs):
    """Roots in F of the polynomial with integer-encoded coefficients (constant first)."""
    if not F.has_tables:
        return _poly_roots_gcd(F, coeffs)
    elems = np.arange(F.q, dtype=np.int64)
    acc = np.zeros(F.q, dtype=np.int64)
    for c in reversed(coeffs):
        acc = F.vadd(F.vmul(acc, elems), np.full(F.q, c, dtype=np.int64))
    return [int(x) for x in np.nonzero(acc == 0)[0]]


# -- polynomials over F (lists of encodings, constant first), for large fields --

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmonic(F, a):
    iv = F.inv(a[-1])
    return [F.mul(c, iv) for c in a]


def _pdivmod(F, a, b):
    a = list(a)
    b = _pmonic(F, b)
    db = len(b) - 1
    quo = [0] * max(len(a) - db, 1)
    while len(_ptrim(a)) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        quo[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, bc))
    return quo, a


def _pmulmod(F, a, b, f):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _pdivmod(F, out, f)[1]


def _ppowmod(F, base, e, f):
    out, base = [1], _pdivmod(F, base, f)[1]
    while e:
        if e & 1:
            out = _pmulmod(F, out, base, f)
        base = _pmulmod(F, base, base, f)
        e >>= 1
    return out


def _pgcd(F, a, b):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pdivmod(F, a, b)[1]
    return _pmonic(F, a) if a else a


def _poly_roots_gcd(F, coeffs, seed=0):
    """Roots via gcd with ``x^q - x`` and random equal-degree splitting."""
    f = _ptrim([int(c) for c in coeffs])
    roots = []
    if f and f[0] == 0:
        roots.append(0)
        while f[0] == 0:
            f = f[1:]
    if len(f) <= 1:
        return roots
    xq = _ppowmod(F, [0, 1], F.q, f)
    xq = xq + [0] * max(0, 2 - len(xq))
    xq[1] = F.sub(xq[1], 1)
    g = _pgcd(F, f, xq)
    rng = LCG(seed + 1)
    stack = [g] if len(g) > 1 else []
    odd = F.p != 2
    while stack:
        h = stack.pop()
        if len(h) == 2:
            roots.append(F.neg(h[0]))
            continue
        while True:
            a = rng.randint(F.q)
            if odd:
                w = _ppowmod(F, [a, 1], (F.q - 1) // 2, h)
                w = w + [0] * max(0, 1 - len(w))
                w[0] = F.sub(w[0], 1)
            else:
                # absolute trace of a*x; roots r, s separate when Tr(a(r - s)) = 1
                t = _pdivmod(F, [0, a], h)[1]
                w = list(t)
                for _ in range(F.k - 1):
                    t = _pmulmod(F, t, t, h)
                    w = [F.add(x, y) for x, y in itertools.zip_longest(w, t, fillvalue=0)]
            d = _pgcd(F, h, w)
            if 1 < len(d) < len(h):
                stack.append(d)
                stack.append(_pdivmod(F, h, d)[0])
                break
    return sorted(roots)


def _vector_minpoly(F, A, v):
    """Minimal polynomial (constant first) of the row vector ``v`` under ``x -> x A^T``."""
    n = A.shape[1]
    AT = la.transpose(A)
    vecs = [v]
    E = la.Echelon(F, n)
    E.add(v[:, None, :])
    cur = v
    while True:
        cur = la.matmul(F, cur[:, None, :], AT)[:, 0, :]
        if E.reduce(cur[:, None, :]).any():
            E.add(cur[:, None, :])
            vecs.append(cur)
            continue
        B = np.stack(vecs, axis=1)
        C = la.solve_rows(F, cur[:, None, :], B)
        coeffs = [F.neg(int(x)) for x in la.to_ints(F, C)[0]]
        return coeffs + [1]


class SubmoduleResult(NamedTuple):
    kind: str  # "submodule" or "irreducible"
    basis: object = None  # RREF rows of the submodule
    pivots: list = None
    attempts: int = 0


def _annihilator(F, W):
    """Rows spanning ``{x : W x = 0}`` in RREF."""
    N = la.nullspace(F, W)
    return la.rref(F, N)


def find_submodule(M, seed=1):
    """A proper nonzero submodule of ``M``, or an irreducibility certificate."""
    F = M.field
    n = M.dim
    if n == 0:
        raise ValueError("the zero module has no submodules")
    if n == 1:
        return SubmoduleResult("irreducible", attempts=0)
    rng = LCG(seed)
    I = la.eye(F, n)
    for attempt in range(1, MAX_ATTEMPTS + 1):
        A = random_algebra_element(M, rng)
        v = la.from_ints(F, [[rng.randint(F.q) for _ in range(n)]])[:, 0, :]
        if not v.any():
            continue
        roots = _poly_roots(F, _vector_minpoly(F, A, v))
        if not roots:
            continue
        lam = roots[rng.randint(len(roots))]
        B = (A - la.smul(F, lam, I)) % F.p
        N = la.nullspace(F, B)
        S, piv = spin(M, N[:, :1, :])
        if len(piv) < n:
            return SubmoduleResult("submodule", S, piv, attempt)
        Wl = la.nullspace(F, la.transpose(B))
        W, wpiv = spin(M, Wl[:, :1, :], transposed=True)
        if len(wpiv) < n:
            S, piv = _annihilator(F, W)
            return SubmoduleResult("submodule", S, piv, attempt)
        if N.shape[1] == 1:
            return SubmoduleResult("irreducible", attempts=attempt)
    raise Inconclusive(f"inconclusive after {MAX_ATTEMPTS} attempts (dim {n})")


def is_irreducible(M, seed=1):
    if M.dim == 0:
        return False
    return find_submodule(M, seed).kind == "irreducible"


# -- composition factors --------------------------------------------------------

@dataclass
class FactorEntry:
    label: tuple
    module: MatRep
    multiplicity: int

    @property
    def dim(self):
        return self.module.dim


@dataclass
class FactorMultiset:
    entries: list
    total_dim: int

    def as_multiset(self):
        """``{label: multiplicity}`` for comparisons."""
        return {e.label: e.multiplicity for e in self.entries}

    def dims(self):
        return sorted(d for e in self.entries for d in [e.dim] * e.multiplicity)

    def __len__(self):
        return sum(e.multiplicity for e in self.entries)


def factor_label(M):
    """Canonical label ``(dim, Brauer fingerprint)``."""
    from .chars import fingerprint
    return (M.dim, fingerprint(M))


def composition_factors(M, seed=1):
    """Composition factors with multiplicities, labelled canonically."""
    if M.dim > MAX_DIM:
        raise ValueError(f"dimension {M.dim} exceeds the cap {MAX_DIM}")
    stack = [M] if M.dim else []
    irreducibles = []
    s = seed
    while stack:
        X = stack.pop()
        res = find_submodule(X, s)
        s += 1
        if res.kind == "irreducible":
            irreducibles.append(X)
            continue
        stack.append(sub_rep(X, res.basis, res.pivots))
        stack.append(quotient_rep(X, res.basis, res.pivots))
    groups = {}
    for X in irreducibles:
        lab = factor_label(X)
        if lab in groups:
            groups[lab].multiplicity += 1
        else:
            groups[lab] = FactorEntry(lab, X, 1)
    entries = sorted(groups.values(), key=lambda e: e.label)
    return FactorMultiset(entries, M.dim)


# -- isomorphism and splitting --------------------------------------------------

def iso_test(M1, M2, irreducible=False, seed=0):
    """True iff ``M1`` and ``M2`` are isomorphic.

    With ``irreducible=True`` a nonzero homomorphism suffices (Schur);
    otherwise random combinations of a Hom basis are tried for invertibility.
    """
    if M1.dim != M2.dim:
        return False
    if M1.dim == 0:
        return True
    H = hom_space(M1, M2)
    if H.dim == 0:
        return False
    if irreducible:
        return True
    F = M1.field
    rng = np.random.default_rng(seed)
    for _ in range(50):
        X = la.zeros(F, M2.dim, M1.dim)
        for B in H.basis:
            X = (X + la.smul(F, int(rng.integers(F.q)), B)) % F.p
        if la.rank(F, X) == M1.dim:
            return True
    return False


def non_split_check(M, S, pivots):
    """True iff ``0 -> S -> M -> M/S -> 0`` does not split.

    Compares ``dim Hom(Q, M)`` with ``dim Hom(Q, S) + dim Hom(Q, Q)``; the
    two agree exactly when the identity of ``Q`` lifts to a section.
    """
    Sm = sub_rep(M, S, pivots)
    Q = quotient_rep(M, S, pivots)
    return hom_space(Q, M).dim != hom_space(Q, Sm).dim + hom_space(Q, Q).dim
