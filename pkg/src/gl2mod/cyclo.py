"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Internally a :class:`CycNum` is a sparse rational combination of a fixed
basis of roots of unity: for ``N = n_1 * ... * n_r`` (prime powers) the
basis is the tensor product of the power bases ``{zeta_{n_i}^t : t < phi(n_i)}``.
That basis keeps sums of a few roots of unity sparse.  The dense power-basis
coordinates modulo the N-th cyclotomic polynomial are produced on demand by
:meth:`CycNum.coords` and accepted by :meth:`CycNum.from_coords`.
"""

from collections import defaultdict
from functools import lru_cache
from math import gcd
from typing import NamedTuple

import cmath

import numpy as np
from gmpy2 import mpq

from ._nt import euler_phi, factorize, lcm, moebius


class _Basis:
    """Reduction data for one conductor."""

    def __init__(self, N):
        self.N = N
        self.parts = [pr**e for pr, e in sorted(factorize(N).items())] if N > 1 else []
        # CRT idempotents: e_i = 1 mod n_i, 0 mod n_j (j != i)
        self.idem = []
        for n in self.parts:
            rest = N // n
            self.idem.append(rest * pow(rest, -1, n) % N)
        self._cache = {}

    def expand(self, j):
        """Canonical expansion of zeta_N^j as a tuple of ``(exponent, sign)``."""
        j %= self.N
        hit = self._cache.get(j)
        if hit is not None:
            return hit
        comps = [[(1, j % n)] for n in self.parts]
        out_components = []
        for n, terms in zip(self.parts, comps):
            pr = _prime_of(n)
            phi = n // pr * (pr - 1)
            t = terms[0][1]
            if t < phi:
                out_components.append([(1, t)])
            else:
                s = t - phi
                step = n // pr
                out_components.append([(-1, c * step + s) for c in range(pr - 1)])
        acc = {0: 1}
        for e, comp in zip(self.idem, out_components):
            nxt = defaultdict(int)
            for j0, s0 in acc.items():
                for s1, t in comp:
                    nxt[(j0 + e * t) % self.N] += s0 * s1
            acc = nxt
        res = tuple((k, v) for k, v in acc.items() if v)
        self._cache[j] = res
        return res

    @property
    def phi(self):
        return euler_phi(self.N)


def _prime_of(n):
    return next(iter(factorize(n)))


@lru_cache(maxsize=None)
def _basis(N):
    return _Basis(N)


@lru_cache(maxsize=64)
def _power_basis_table(N):
    """Rows: power-basis coordinates of zeta_N^j for j = 0..N-1."""
    phi = euler_phi(N)
    # coefficients of Phi_N, constant first
    poly = _cyclotomic_poly(N)
    table = np.zeros((N, phi), dtype=object)
    vec = [0] * phi
    vec[0] = 1
    for j in range(N):
        table[j] = vec
        # multiply by x and reduce modulo Phi_N
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * c for v, c in zip(vec, poly[:phi])]
    return table


@lru_cache(maxsize=None)
def _cyclotomic_poly(N):
    """Integer coefficients of Phi_N, constant term first."""
    num = [1]
    den = [1]
    for d in range(1, N + 1):
        if N % d:
            continue
        mu = moebius(N // d)
        factor = [-1] + [0] * (d - 1) + [1]  # x^d - 1
        if mu == 1:
            num = _polymul(num, factor)
        elif mu == -1:
            den = _polymul(den, factor)
    return _polydiv_exact(num, den)


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polydiv_exact(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    assert not any(a), "inexact polynomial division"
    return q


def _as_mpq(x):
    return x if isinstance(x, type(mpq(0))) else mpq(x)


class CycNum:
    """An element of Q(zeta_N) with exact rational coordinates."""

    __slots__ = ("N", "terms", "_hash")

    def __init__(self, N, terms=None):
        self.N = int(N)
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def rational(cls, r, N=1):
        r = _as_mpq(r)
        return cls(N, {0: r} if r else {})

    @classmethod
    def zeta(cls, N, j=1):
        return cls(N, {k: mpq(s) for k, s in _basis(N).expand(j)})

    @classmethod
    def from_exponents(cls, N, counts):
        """Sum of ``c * zeta_N^j`` over ``counts.items()`` (unreduced exponents)."""
        basis = _basis(N)
        acc = defaultdict(int)
        for j, c in counts.items():
            if not c:
                continue
            for k, s in basis.expand(j):
                acc[k] += s * c
        return cls(N, {k: _as_mpq(v) for k, v in acc.items() if v})

    @classmethod
    def from_coords(cls, N, coords):
        """Inverse of :meth:`coords`: power-basis coordinates modulo Phi_N."""
        return cls.from_exponents(N, {i: _as_mpq(c) for i, c in enumerate(coords)})

    # -- conversions ----------------------------------------------------
    def coords(self):
        """Power-basis coordinates (length phi(N)) as ``mpq`` values."""
        phi = euler_phi(self.N)
        table = _power_basis_table(self.N)
        out = [mpq(0)] * phi
        for j, c in self.terms.items():
            row = table[j]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
        return out

    def raise_to(self, M):
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"conductor {self.N} does not divide {M}")
        f = M // self.N
        basis = _basis(M)
        acc = defaultdict(lambda: mpq(0))
        for j, c in self.terms.items():
            for k, s in basis.expand(j * f):
                acc[k] += s * c
        return CycNum(M, {k: v for k, v in acc.items() if v})

    def is_rational(self):
        return all(k == 0 for k in self.terms)

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.terms.get(0, mpq(0))

    def is_zero(self):
        return not self.terms

    def to_complex(self):
        """Floating-point value, for display only."""
        w = cmath.exp(2j * cmath.pi / self.N)
        return sum(complex(float(c)) * w**j for j, c in self.terms.items())

    def normalized_trace(self):
        """Tr(x)/[Q(zeta_N):Q]; independent of the conductor used."""
        tot = mpq(0)
        for j, c in self.terms.items():
            d = self.N // gcd(j, self.N)
            tot += c * mpq(moebius(d), euler_phi(d))
        return tot

    # -- arithmetic -----------------------------------------------------
    def _common(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.rational(other)
        if other.N == self.N:
            return self, other
        M = lcm(self.N, other.N)
        return self.raise_to(M), other.raise_to(M)

    def __add__(self, other):
        a, b = self._common(other)
        t = dict(a.terms)
        for k, v in b.terms.items():
            s = t.get(k, 0) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return CycNum(a.N, t)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.N, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycNum) else -_as_mpq(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycNum):
            r = _as_mpq(other)
            if not r:
                return CycNum(self.N)
            return CycNum(self.N, {k: v * r for k, v in self.terms.items()})
        a, b = self._common(other)
        if len(a.terms) == 1 and 0 in a.terms:
            return b * a.terms[0]
        if len(b.terms) == 1 and 0 in b.terms:
            return a * b.terms[0]
        basis = _basis(a.N)
        N = a.N
        acc = defaultdict(lambda: mpq(0))
        for j1, c1 in a.terms.items():
            for j2, c2 in b.terms.items():
                c = c1 * c2
                for k, s in basis.expand(j1 + j2):
                    acc[k] += c if s == 1 else s * c
        return CycNum(N, {k: v for k, v in acc.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = CycNum.rational(1, self.N)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, CycNum):
            return self * other.inverse()
        return self * (1 / _as_mpq(other))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def inverse(self):
        if not self.terms:
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        if self.is_rational():
            return CycNum.rational(1 / self.terms[0], self.N)
        if len(self.terms) == 1:
            (j, c), = self.terms.items()
            return CycNum.zeta(self.N, -j) * (1 / c)
        # product of the nontrivial Galois conjugates over the norm
        prod = CycNum.rational(1, self.N)
        for u in range(2, self.N):
            if gcd(u, self.N) == 1:
                prod = prod * galois(self, u)
        norm = (self * prod).to_rational()
        return prod * (1 / norm)

    def __eq__(self, other):
        if not isinstance(other, CycNum):
            try:
                other = CycNum.rational(other)
            except TypeError:
                return NotImplemented
        a, b = self._common(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.normalized_trace())
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for j in sorted(self.terms):
            c = self.terms[j]
            parts.append(f"{c}" if j == 0 else f"{c}*z{self.N}^{j}")
        return " + ".join(parts)


def zeta(N, j=1):
    return CycNum.zeta(N, j)


def cyc_arith(a, b, op):
    """Apply ``op`` in {"add", "sub", "mul"} to two cyclotomic numbers."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def cyc_conj(a):
    """Complex conjugation zeta -> zeta^-1."""
    return galois(a, -1)


def galois(a, j):
    """Image of ``a`` under zeta_N -> zeta_N^j."""
    if not isinstance(a, CycNum):
        return CycNum.rational(a)
    if gcd(j, a.N) != 1:
        raise ValueError(f"galois exponent {j} is not coprime to {a.N}")
    basis = _basis(a.N)
    acc = defaultdict(lambda: mpq(0))
    for k, c in a.terms.items():
        for k2, s in basis.expand(k * j):
            acc[k2] += s * c
    return CycNum(a.N, {k: v for k, v in acc.items() if v})


class Solution(NamedTuple):
    status: str  # "unique", "inconsistent" or "rank-deficient"
    x: list | None


def solve_exact(A, b):
    """Solve ``A x = b`` over Q(zeta_N) by Gaussian elimination.

    Returns a :class:`Solution`; inconsistency and rank deficiency are
    reported through ``status`` rather than raised.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[_cyc(v) for v in A[i]] + [_cyc(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][cols]:
            return Solution("inconsistent", None)
    if len(pivots) < cols:
        return Solution("rank-deficient", None)
    return Solution("unique", [M[i][cols] for i in range(cols)])


def _cyc(v):
    return v if isinstance(v, CycNum) else CycNum.rational(v)


def nullspace_exact(A):
    """Basis (list of vectors) of the right null space of ``A`` over Q(zeta_N)."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[_cyc(v) for v in row] for row in A]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [CycNum.rational(0) for _ in range(cols)]
        v[fc] = CycNum.rational(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        basis.append(v)
    return basis


def rational_combination(columns, target):
    """Find rational ``d`` with ``sum_i d_i * columns[i] == target`` exactly.

    ``columns`` is a list of equal-length vectors of :class:`CycNum`.  The
    cyclotomic equations are split into rational coordinate equations; pivot
    rows are chosen by a rank computation modulo a large prime, the square
    subsystem is solved over Q, and the full system is then checked exactly.
    Returns a :class:`Solution` with a list of ``mpq`` values.
    """
    ncols = len(columns)
    if ncols == 0:
        ok = all(_cyc(t).is_zero() for t in target)
        return Solution("unique" if ok else "inconsistent", [])
    N = lcm(*[_cyc(v).N for col in columns for v in col], *[_cyc(t).N for t in target])
    keyset = set()
    colterms = []
    for col in columns:
        ct = [_cyc(v).raise_to(N).terms for v in col]
        colterms.append(ct)
        for i, t in enumerate(ct):
            keyset.update((i, k) for k in t)
    tgt = [_cyc(v).raise_to(N).terms for v in target]
    for i, t in enumerate(tgt):
        keyset.update((i, k) for k in t)
    keys = sorted(keyset)
    R = [[colterms[c][i].get(k, mpq(0)) for c in range(ncols)] for (i, k) in keys]
    rhs = [tgt[i].get(k, mpq(0)) for (i, k) in keys]
    # modular pivot-row selection on the integer-scaled system
    P = 2147483629
    rows_sel = _independent_rows(R, P)
    if len(rows_sel) < ncols:
        return Solution("rank-deficient", None)
    sub = [R[i] for i in rows_sel]
    subb = [rhs[i] for i in rows_sel]
    x = _solve_square_rational(sub, subb)
    if x is None:
        return Solution("rank-deficient", None)
    for row, bi in zip(R, rhs):
        if sum((a * xi for a, xi in zip(row, x) if a), mpq(0)) != bi:
            return Solution("inconsistent", None)
    return Solution("unique", x)


def _independent_rows(R, P):
    if not R:
        return []
    dens = [1] * len(R)
    mat = []
    for i, row in enumerate(R):
        d = lcm(*[int(v.denominator) for v in row]) if row else 1
        dens[i] = d
        mat.append([int(v * d) % P for v in row])
    A = np.array(mat, dtype=np.int64)
    chosen = []
    basis = np.zeros((0, A.shape[1]), dtype=np.int64)
    piv_cols = []
    for i in range(A.shape[0]):
        v = A[i].copy()
        for prow, pc in zip(basis, piv_cols):
            if v[pc]:
                v = (v - v[pc] * prow) % P
        nz = np.nonzero(v)[0]
        if len(nz) == 0:
            continue
        pc = int(nz[0])
        v = v * pow(int(v[pc]), -1, P) % P
        # keep basis reduced at the new pivot
        for bi in range(len(basis)):
            if basis[bi, pc]:
                basis[bi] = (basis[bi] - basis[bi, pc] * v) % P
        basis = np.vstack([basis, v])
        piv_cols.append(pc)
        chosen.append(i)
        if len(chosen) == A.shape[1]:
            break
    return chosen


def _solve_square_rational(A, b):
    n = len(A)
    M = [list(map(mpq, A[i])) + [mpq(b[i])] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]
