"""Cartan-Weyl characters, Weyl dimensions and the GL_2 dual Weyl modules.

Over F_p the dual Weyl module of highest weight ``(l1, l2)`` for GL_2 is
``det^l2 (x) Sym^(l1 - l2)(V)``; its restriction to GL_2(F_p) is what the
finite-group computations see.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from . import linalg as la
from .cyclo import CycNum
from .ff import make_field
from .gl2 import prime_power
from .repmod import det_twist, hom_space, induced_from_borel, standard_rep, sym_power


@dataclass(frozen=True)
class HighestWeight:
    lam: tuple

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lam)
        if any(a < b for a, b in zip(lam, lam[1:])):
            raise ValueError(f"{lam} is not dominant (weakly decreasing)")
        object.__setattr__(self, "lam", lam)

    @property
    def n(self):
        return len(self.lam)

    def w0(self):
        """The longest Weyl element reverses the tuple (as a weight)."""
        return tuple(reversed(self.lam))


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _det(rows, zero):
    """Leibniz determinant over any commutative ring of Python values."""
    n = len(rows)
    tot = zero
    for perm in itertools.permutations(range(n)):
        term = rows[0][perm[0]]
        for i in range(1, n):
            term = term * rows[i][perm[i]]
        tot = tot + term if _perm_sign(perm) > 0 else tot - term
    return tot


def _as_exact(x):
    if isinstance(x, CycNum):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def cartan_weyl_char(lam, t):
    """``det(t_j^(l_i + n - i)) / det(t_j^(n - i))`` evaluated exactly.

    ``t`` holds nonzero rationals or :class:`CycNum` values with pairwise
    distinct entries.
    """
    lam = HighestWeight(tuple(lam)).lam
    n = len(lam)
    if len(t) != n:
        raise ValueError("t must have one coordinate per weight entry")
    t = [_as_exact(x) for x in t]
    if any(x == 0 for x in t):
        raise ValueError("torus coordinates must be nonzero")
    for i in range(n):
        for j in range(i + 1, n):
            if t[i] == t[j]:
                raise ValueError("torus coordinates must be pairwise distinct")
    zero = CycNum.rational(0) if any(isinstance(x, CycNum) for x in t) else mpq(0)
    shift = [n - 1 - i for i in range(n)]
    num = _det([[_pow(x, lam[i] + shift[i]) for x in t] for i in range(n)], zero)
    den = _det([[_pow(x, shift[i]) for x in t] for i in range(n)], zero)
    return num / den


def _pow(x, e):
    if e >= 0:
        return x ** e
    return (1 / x) ** (-e) if not isinstance(x, CycNum) else x.inverse() ** (-e)


def weyl_dimension(lam):
    """``prod_{i<j} (l_i - l_j + j - i) / (j - i)``."""
    lam = HighestWeight(tuple(lam)).lam
    n = len(lam)
    num = den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def specialized_dimension(lam):
    """Dimension from the character at ``t = (x^(n-1), ..., x, 1)`` as ``x -> 1``.

    The specialization is a polynomial in ``x``; it is sampled at integer
    points and evaluated at 1 by Lagrange interpolation.  Needs ``lam >= 0``.
    """
    lam = HighestWeight(tuple(lam)).lam
    if lam[-1] < 0:
        raise ValueError("specialized_dimension needs nonnegative weights")
    n = len(lam)
    deg = (n - 1) * sum(lam) + 1
    xs = list(range(2, deg + 3))
    ys = [cartan_weyl_char(lam, [mpq(x) ** (n - 1 - i) for i in range(n)]) for x in xs]
    tot = mpq(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = yi
        for j, xj in enumerate(xs):
            if j != i:
                term = term * mpq(1 - xj, xi - xj)
        tot += term
    return int(tot)


def sym_trace(lam, t):
    """Trace of ``(t1 t2)^l2 Sym^(l1 - l2)`` on ``diag(t1, t2)`` by direct expansion."""
    l1, l2 = HighestWeight(tuple(lam)).lam
    t1, t2 = (_as_exact(x) for x in t)
    m = l1 - l2
    tot = sum((t1 ** a * t2 ** (m - a) for a in range(m + 1)), mpq(0) * t1)
    return tot * _pow(t1 * t2, l2)


def dual_weyl_gl2(lam, F):
    """``det^l2 (x) Sym^(l1 - l2)(V)`` as a GL_2(F_p)-module over ``F``."""
    l1, l2 = HighestWeight(tuple(lam)).lam
    p = F.p
    M = det_twist(sym_power(standard_rep(p, F), l1 - l2), l2 % (p - 1))
    M.name = f"H0({l1},{l2})"
    return M


def restricted_irreducible_check(p):
    """Check ``det^j Sym^i`` (``i < p``, ``j < p - 1``) are p(p-1) distinct irreducibles.

    Returns the list of modules.  Raises AssertionError on failure.
    """
    from .meataxe import find_submodule, iso_test
    if p > 13 or prime_power(p)[1] != 1:
        raise ValueError("restricted_irreducible_check needs a prime p <= 13")
    F = make_field(p, 1)
    V = standard_rep(p, F)
    mods = []
    for i in range(p):
        S = sym_power(V, i)
        for j in range(p - 1):
            M = det_twist(S, j)
            M.name = f"det^{j}*Sym^{i}"
            if find_submodule(M).kind != "irreducible":
                raise AssertionError(f"{M.name} is reducible")
            mods.append(M)
    for a, b in itertools.combinations(mods, 2):
        if a.dim == b.dim and iso_test(a, b, irreducible=True):
            raise AssertionError(f"{a.name} and {b.name} are isomorphic")
    if len(mods) != p * (p - 1):
        raise AssertionError("wrong count")
    return mods


def principal_series_embedding(p, i1, i2):
    """The map ``det^i1 Sym^(i2-i1) -> Ps(i1, i2)`` over F_p, for ``i1 <= i2 <= p - 1``.

    Returns ``(hom_dim, rank)``; injectivity means rank equals the source dimension.
    """
    F = make_field(p, 1)
    S = dual_weyl_gl2((i2, i1), F)
    P = induced_from_borel(p, i1, i2, F)
    H = hom_space(S, P)
    if H.dim == 0:
        return 0, 0
    return H.dim, la.rank(F, H.basis[0])
