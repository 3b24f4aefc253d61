"""Conjugacy classes of GL_2(F_q) and group-order counting for GL_n.

Group elements are 4-tuples ``(a, b, c, d)`` of integer-encoded elements of
F_q standing for the matrix ``[[a, b], [c, d]]``.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from ._nt import coprime_part, divisors, factorize, lcm
from .ff import make_field, restrict_value

FAMILIES = ("central", "unipotent", "split", "elliptic")


def prime_power(q):
    """Return ``(p, d)`` with ``q == p**d``; raise for non prime powers."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    f = factorize(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, d), = f.items()
    return p, d


@dataclass(frozen=True)
class ClassData:
    """One conjugacy class of GL_2(F_q).

    ``params`` holds field elements (integer encodings): ``(z,)`` for the
    central and unipotent families, ``(a, b)`` for split classes and
    ``(x, x^q)`` in F_{q^2} for elliptic ones.  ``exps`` holds the matching
    discrete logarithms (to the F_q generator, or the F_{q^2} generator for
    elliptic classes), which is what characters are evaluated on.
    """

    family: str
    params: tuple
    exps: tuple
    rep: tuple
    size: int
    elt_order: int
    label: str
    index: int = 0


class GL2:
    """Arithmetic and class lookup for GL_2(F_q)."""

    def __init__(self, q):
        self.q = q
        self.p, self.d = prime_power(q)
        self.F = make_field(self.p, self.d)
        self.F2 = make_field(self.p, 2 * self.d)
        self.order = (q * q - 1) * (q * q - q)
        self.classes = _build_classes(self)
        self._lookup = {}
        for c in self.classes:
            if c.family in ("central", "unipotent"):
                z = c.params[0]
                key = (self.F.add(z, z), self.F.mul(z, z))
                self._lookup.setdefault(key, {})[c.family] = c.index
            else:
                a, b = c.rep[0], c.rep[3]
                key = (self.F.add(a, b), self.det(c.rep))
                self._lookup[key] = c.index

    # -- element arithmetic -------------------------------------------------
    def mul(self, g, h):
        F = self.F
        a, b, c, d = g
        e, f, x, y = h
        return (F.add(F.mul(a, e), F.mul(b, x)), F.add(F.mul(a, f), F.mul(b, y)),
                F.add(F.mul(c, e), F.mul(d, x)), F.add(F.mul(c, f), F.mul(d, y)))

    def det(self, g):
        F = self.F
        return F.sub(F.mul(g[0], g[3]), F.mul(g[1], g[2]))

    def trace(self, g):
        return self.F.add(g[0], g[3])

    def inv(self, g):
        F = self.F
        di = F.inv(self.det(g))
        a, b, c, d = g
        return (F.mul(d, di), F.mul(F.neg(b), di), F.mul(F.neg(c), di), F.mul(a, di))

    def identity(self):
        return (1, 0, 0, 1)

    def power(self, g, e):
        out = self.identity()
        while e:
            if e & 1:
                out = self.mul(out, g)
            g = self.mul(g, g)
            e >>= 1
        return out

    def elements(self):
        """All group elements (lexicographic in the integer encodings)."""
        q = self.q
        for g in itertools.product(range(q), repeat=4):
            if self.det(g):
                yield g

    def matrix_order(self, g):
        """Order of ``g`` by powering, over divisors of the group exponent."""
        for dv in divisors(self.exponent_bound()):
            if self.power(g, dv) == self.identity():
                return dv
        raise AssertionError("element order does not divide the exponent")

    def exponent_bound(self):
        q = self.q
        return lcm(q * q - 1, self.p * (q - 1))

    # -- classes -------------------------------------------------------------
    def classify(self, g):
        """Index into :attr:`classes` of the class containing ``g``."""
        key = (self.trace(g), self.det(g))
        hit = self._lookup[key]
        if isinstance(hit, dict):
            scalar = g[1] == 0 and g[2] == 0 and g[0] == g[3]
            return hit["central" if scalar else "unipotent"]
        return hit

    def class_by_label(self, label):
        for c in self.classes:
            if c.label == label:
                return c
        raise KeyError(label)


@lru_cache(maxsize=32)
def gl2(q):
    """Cached :class:`GL2` instance."""
    if q > 128:
        raise ValueError(f"q = {q} exceeds the supported bound 128")
    return GL2(q)


def _build_classes(G):
    F, F2, q, p = G.F, G.F2, G.q, G.p
    out = []
    n = q - 1
    units = [F.exp(i) for i in range(n)]

    def add(family, params, exps, rep, size, order, label):
        out.append(ClassData(family, params, exps, rep, size, order, label, len(out)))

    for i, z in enumerate(units):
        add("central", (z,), (i,), (z, 0, 0, z), 1, F.order(z), f"central:z={z}")
    for i, z in enumerate(units):
        add("unipotent", (z,), (i,), (z, 1, 0, z), q * q - 1, F.order(z) * p,
            f"unipotent:z={z}")
    for i in range(n):
        for j in range(i + 1, n):
            a, b = units[i], units[j]
            add("split", (a, b), (i, j), (a, 0, 0, b), q * q + q,
                lcm(F.order(a), F.order(b)), f"split:a={a},b={b}")
    m = q * q - 1
    for t in range(m):
        if t % (q + 1) == 0 or t != min(t, t * q % m):
            continue
        x = F2.exp(t)
        xq = F2.exp(t * q)
        tr = restrict_value(F2.add(x, xq), F2, F)
        nm = restrict_value(F2.mul(x, xq), F2, F)
        rep = (0, F.neg(nm), 1, tr)
        add("elliptic", (x, xq), (t,), rep, q * q - q, m // gcd(t, m), f"elliptic:dlog={t}")
    return out


def conj_classes(q):
    """The ``q^2 - 1`` conjugacy classes of GL_2(F_q) in canonical order.

    Central classes by discrete log of ``z``, then unipotent classes, then
    split classes ``{a, b}`` with ``dlog a < dlog b``, then elliptic classes
    by the smaller discrete log in their Frobenius orbit.
    """
    return list(gl2(q).classes)


def brute_force_classes(q):
    """Conjugacy classes by orbit enumeration (small ``q`` only).

    Returns a list of frozensets of elements.  The orbit of each element is
    grown under conjugation by the three standard generators.
    """
    G = gl2(q)
    gamma = G.F.gen
    gens = [(1, 1, 0, 1), (1, 0, 1, 1), (gamma, 0, 0, 1)]
    gens_inv = [G.inv(s) for s in gens]
    seen = set()
    orbits = []
    for g in G.elements():
        if g in seen:
            continue
        orbit = {g}
        frontier = [g]
        while frontier:
            nxt = []
            for x in frontier:
                for s, si in zip(gens, gens_inv):
                    y = G.mul(G.mul(s, x), si)
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        seen |= orbit
        orbits.append(frozenset(orbit))
    return orbits


def group_order(n, q):
    """|GL_n(F_q)| = prod_{i<n} (q^n - q^i)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def is_regular_class(c, ell):
    """True iff the elements of ``c`` have order prime to ``ell``."""
    return gcd(c.elt_order, ell) == 1


def regular_classes(q, ell):
    return [c for c in conj_classes(q) if is_regular_class(c, ell)]


def semisimple_class_count(n, q, check=False):
    """Number of semisimple classes of GL_n(F_q), ``q^(n-1) (q-1)``.

    With ``check=True`` the monic degree-``n`` polynomials over F_q with
    nonzero constant term are enumerated and the count compared.
    """
    count = q ** (n - 1) * (q - 1)
    if check:
        if n > 4 or q > 16:
            raise ValueError("enumeration check limited to n <= 4, q <= 16")
        p, _ = prime_power(q)
        brute = 0
        for coeffs in itertools.product(range(q), repeat=n):
            # coeffs[0] is the constant term
            if coeffs[0] != 0:
                brute += 1
        if brute != count:
            raise AssertionError(f"semisimple count mismatch: {brute} != {count}")
    return count


def exponent(q):
    """Exponent of GL_2(F_q): lcm of all element orders."""
    return lcm(*[c.elt_order for c in conj_classes(q)])


def prime_to_ell_exponent(q, ell):
    """Largest divisor of the exponent of GL_2(F_q) prime to ``ell``."""
    return coprime_part(exponent(q), ell)


def ell_part(n, ell):
    """The ``ell``-part of ``n``."""
    return n // coprime_part(n, ell)
