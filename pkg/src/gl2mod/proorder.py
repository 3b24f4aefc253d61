"""Supernatural numbers and pro-orders of GL_n over the p-adic integers."""

import enum

from ._nt import factorize, is_prime
from .gl2 import group_order


class _Inf(enum.Enum):
    INF = "inf"

    def __repr__(self):
        return "INF"


INF = _Inf.INF


def _add(a, b):
    return INF if INF in (a, b) else a + b


def _max(a, b):
    if INF in (a, b):
        return INF
    return max(a, b)


class Supernatural:
    """``prod p^(n_p)`` with ``n_p`` a nonnegative integer or :data:`INF`."""

    __slots__ = ("exponents",)

    def __init__(self, exponents=None):
        ex = {}
        for p, e in (exponents or {}).items():
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if e is not INF and (not isinstance(e, int) or e < 0):
                raise ValueError(f"bad exponent {e!r} at {p}")
            if e is INF or e > 0:
                ex[int(p)] = e
        self.exponents = dict(sorted(ex.items()))

    @classmethod
    def from_int(cls, n):
        if n < 1:
            raise ValueError("supernatural numbers extend the positive integers")
        return cls(factorize(n))

    def is_finite(self):
        return INF not in self.exponents.values()

    def to_int(self):
        if not self.is_finite():
            raise ValueError("infinite supernatural number")
        out = 1
        for p, e in self.exponents.items():
            out *= p**e
        return out

    def truncate(self, cap):
        """Replace each infinite exponent by ``cap``."""
        return Supernatural({p: cap if e is INF else e for p, e in self.exponents.items()})

    def divides(self, other):
        for p, e in self.exponents.items():
            f = other.exponents.get(p, 0)
            if f is INF:
                continue
            if e is INF or e > f:
                return False
        return True

    def __mul__(self, other):
        return sn_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, Supernatural) and self.exponents == other.exponents

    def __hash__(self):
        return hash(tuple(self.exponents.items()))

    def __str__(self):
        if not self.exponents:
            return "1"
        parts = []
        for p, e in self.exponents.items():
            parts.append(f"{p}^inf" if e is INF else (str(p) if e == 1 else f"{p}^{e}"))
        return " * ".join(parts)

    def __repr__(self):
        return f"Supernatural({self})"


def sn_mul(a, b):
    keys = set(a.exponents) | set(b.exponents)
    return Supernatural({p: _add(a.exponents.get(p, 0), b.exponents.get(p, 0)) for p in keys})


def sn_lcm(a, b):
    keys = set(a.exponents) | set(b.exponents)
    return Supernatural({p: _max(a.exponents.get(p, 0), b.exponents.get(p, 0)) for p in keys})


def pro_order_gln(n, p):
    """Pro-order of GL_n(Z_p): ``|GL_n(F_p)| * p^inf``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    ex = dict(factorize(group_order(n, p)))
    ex[p] = INF
    return Supernatural(ex)


def bad_primes(n, p):
    """Primes dividing ``|GL_n(F_p)|`` (``p`` always included)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return sorted(set(factorize(group_order(n, p))) | {p})
