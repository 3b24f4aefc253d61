"""Finite fields F_{p^k} with canonical defining polynomials and generators.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_i`` are the
coordinates in the basis ``1, a, ..., a^(k-1)`` of a root ``a`` of the
defining polynomial.  "Lexicographic" order on elements always means the
order of the coordinate tuples ``(c_0, c_1, ...)``.

Generators are chosen compatibly: the generator of F_{p^k} raised to
``(p^k - 1)/(p^d - 1)`` is a Galois conjugate of the generator of F_{p^d}
for every ``d | k``.  That makes :func:`embed` (defined by generator powers)
a field homomorphism and all root-of-unity lifts consistent across fields.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from ._nt import divisors, factorize, is_prime
from .cyclo import CycNum

TABLE_LIMIT = 1 << 20
MAX_ORDER = 1 << 31


class FieldError(ValueError):
    pass


# -- polynomials over F_p (lists of ints, constant term first) ------------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, f, p)


def _pmod(a, f, p):
    a = _ptrim([x % p for x in a])
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for i, y in enumerate(f):
            a[shift + i] = (a[shift + i] - c * y) % p
        _ptrim(a)
    return a


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowx(e, f, p):
    """x**e modulo f over F_p."""
    result = [1]
    base = _pmod([0, 1], f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _is_irreducible(f, p):
    k = len(f) - 1
    if k == 1:
        return True
    if f[0] == 0:
        return False
    xq = _ppowx(p**k, f, p)
    if _ptrim([(a - b) % p for a, b in itertools.zip_longest(xq, [0, 1], fillvalue=0)]):
        return False
    for r in factorize(k):
        h = _ppowx(p ** (k // r), f, p)
        diff = _ptrim([(a - b) % p for a, b in itertools.zip_longest(h, [0, 1], fillvalue=0)])
        if len(_pgcd(f, diff, p)) != 1:
            return False
    return True


def least_irreducible(p, k):
    """Lexicographically least monic irreducible of degree ``k`` over F_p."""
    if k == 1:
        return (0, 1)
    # a zero constant term means x divides f, so start the constant at 1
    for tail in itertools.product(range(1, p), *[range(p)] * (k - 1)):
        f = list(tail) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


# -- the field ----------------------------------------------------------------

class FieldDesc:
    """The field F_{p^k}: defining polynomial, generator and arithmetic."""

    def __init__(self, p, k, poly):
        self.p = p
        self.k = k
        self.q = p**k
        self.poly = tuple(poly)
        self.gen = None
        self._pows = [p**i for i in range(k)]
        self._pow_arr = np.array(self._pows, dtype=np.int64)
        # a^t for t < 2k-1 in coordinates, used to reduce products
        red = np.zeros((max(2 * k - 1, 1), k), dtype=np.int64)
        cur = [1] + [0] * (k - 1)
        for t in range(2 * k - 1):
            red[t] = cur
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * f) % p for c, f in zip(cur, self.poly[:k])]
        self.red = red
        self.has_tables = self.q <= TABLE_LIMIT
        self._exp = None
        self._log = None
        self._digits = None

    # identity is (p, k): fields are canonical
    def __eq__(self, other):
        return isinstance(other, FieldDesc) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash(("FieldDesc", self.p, self.k))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    @property
    def characteristic(self):
        return self.p

    # -- coordinates --------------------------------------------------------
    def coords(self, x):
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def from_coords(self, c):
        return sum(int(ci) % self.p * pw for ci, pw in zip(c, self._pows))

    @property
    def digits(self):
        if self._digits is None:
            idx = np.arange(self.q, dtype=np.int64)
            self._digits = np.stack([(idx // pw) % self.p for pw in self._pows], axis=1)
        return self._digits

    def to_coord_array(self, idx):
        """Integer-encoded array -> coordinate array with a leading axis of length k."""
        idx = np.asarray(idx, dtype=np.int64)
        return np.stack([(idx // pw) % self.p for pw in self._pows], axis=0)

    def from_coord_array(self, arr):
        out = np.zeros(arr.shape[1:], dtype=np.int64)
        for i, pw in enumerate(self._pows):
            out += (arr[i] % self.p) * pw
        return out

    def elements_lex(self):
        """All elements, ordered lexicographically by coordinate tuple."""
        if self.k == 1:
            yield from range(self.p)
            return
        for tup in itertools.product(range(self.p), repeat=self.k):
            yield self.from_coords(tup)

    # -- scalar arithmetic --------------------------------------------------
    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        ca, cb = self.coords(a), self.coords(b)
        return self.from_coords([x + y for x, y in zip(ca, cb)])

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        return self.from_coords([-x for x in self.coords(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        if self._log is not None:
            return int(self._exp[self._log[a] + self._log[b]])
        return self._mul_poly(a, b)

    def _mul_poly(self, a, b):
        pw = self._pow_arr
        ca, cb = (a // pw) % self.p, (b // pw) % self.p
        out = np.convolve(ca, cb) @ self.red % self.p
        return int(out @ pw)

    def pow(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self._log is not None:
            return int(self._exp[(self._log[a] * e) % (self.q - 1)])
        if self.k == 1:
            return pow(a, e % (self.p - 1), self.p)
        e %= self.q - 1
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        return self.pow(a, self.q - 2)

    def order(self, a):
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise FieldError("0 has no multiplicative order")
        n = self.q - 1
        o = n
        for r in factorize(n) if n > 1 else {}:
            while o % r == 0 and self.pow(a, o // r) == 1:
                o //= r
        return o

    def exp(self, t):
        """generator ** t"""
        if self._exp is not None:
            return int(self._exp[t % (self.q - 1)])
        return self.pow(self.gen, t)

    def log(self, x):
        """Discrete logarithm to the fixed generator, in [0, q-2]."""
        if x == 0:
            raise FieldError("discrete log of 0")
        if self._log is not None:
            return int(self._log[x])
        return self._bsgs(x)

    def _bsgs(self, x):
        n = self.q - 1
        m = int(n**0.5) + 1
        table = {}
        cur = 1
        for j in range(m):
            table.setdefault(cur, j)
            cur = self.mul(cur, self.gen)
        factor = self.inv(self.pow(self.gen, m))
        cur = x
        for i in range(m + 1):
            j = table.get(cur)
            if j is not None:
                return (i * m + j) % n
            cur = self.mul(cur, factor)
        raise FieldError(f"discrete log failed for {x}")

    def norm(self, a):
        """Norm to F_p: the determinant of multiplication by ``a``."""
        if self.k == 1:
            return a % self.p
        p, k = self.p, self.k
        M = []
        cur = self.coords(a)
        for _ in range(k):
            M.append(list(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * f) % p for c, f in zip(cur, self.poly[:k])]
        det = 1
        for c in range(k):
            piv = next((r for r in range(c, k) if M[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                det = -det
            det = det * M[c][c] % p
            inv = pow(M[c][c], -1, p)
            for r in range(c + 1, k):
                f = M[r][c] * inv % p
                if f:
                    M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
        return det % p

    def minpoly_of(self, a):
        """Minimal polynomial over F_p of ``a`` (list of F_p ints, constant first)."""
        conj = [a]
        cur = self.pow(a, self.p)
        while cur != a:
            conj.append(cur)
            cur = self.pow(cur, self.p)
        poly = [1]
        for c in conj:
            # multiply by (x - c)
            new = [0] * (len(poly) + 1)
            for i, v in enumerate(poly):
                new[i + 1] = self.add(new[i + 1], v)
                new[i] = self.sub(new[i], self.mul(v, c))
            poly = new
        assert all(v < self.p for v in poly)
        return poly

    def eval_fp_poly(self, poly, x):
        acc = 0
        for c in reversed(poly):
            acc = self.add(self.mul(acc, x), c)
        return acc

    # -- vectorized helpers (table fields only) ------------------------------
    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return a * b % self.p
        la, lb = self._log[a], self._log[b]
        out = self._exp[np.where((a == 0) | (b == 0), 0, la + lb)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        return self.from_coord_array(self.to_coord_array(a) + self.to_coord_array(b))

    def _install_tables(self, g0):
        """Build exp/log tables with respect to ``g0`` (must be primitive)."""
        n = self.q - 1
        # multiplication by g0 is F_p-linear on coordinates
        mat = np.zeros((self.k, self.k), dtype=np.int64)
        for i in range(self.k):
            e = [0] * self.k
            e[i] = 1
            if self.k == 1:
                mat[:, i] = [g0 % self.p]
            else:
                mat[:, i] = self.coords(self._mul_poly(self.from_coords(e), g0))
        # coordinate vectors of g0^t by doubling: V[L:2L] = mat^L V[0:L]
        V = np.zeros((self.k, 1), dtype=np.int64)
        V[0, 0] = 1
        step = mat.copy()
        while V.shape[1] < n:
            V = np.concatenate([V, step @ V % self.p], axis=1)
            step = step @ step % self.p
        pw = np.array(self._pows, dtype=np.int64)
        exp = np.zeros(2 * n, dtype=np.int64)
        exp[:n] = pw @ V[:, :n]
        exp[n:] = exp[:n]
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp[:n]] = np.arange(n)
        if (log[1:] < 0).any():
            raise FieldError("table construction: element is not primitive")
        self._exp, self._log = exp, log


@lru_cache(maxsize=None)
def make_field(p, k=1):
    """Canonical F_{p^k}.

    The defining polynomial is the lexicographically least monic irreducible
    of degree ``k``; the generator is the lexicographically least primitive
    element compatible with the generators of all proper subfields.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    if p**k > MAX_ORDER:
        raise FieldError(f"field order {p}^{k} exceeds 2^31")
    F = FieldDesc(p, k, least_irreducible(p, k))
    n = F.q - 1
    subs = []
    for d in divisors(k):
        if d == k:
            continue
        sub = make_field(p, d)
        subs.append((d, sub.minpoly_of(sub.gen), n // (p**d - 1)))
    if n == 1:
        F.gen = 1
        if F.has_tables:
            F._install_tables(1)
        return F
    if F.has_tables:
        g0 = next(x for x in F.elements_lex() if x and F.order(x) == n)
        F._install_tables(g0)
        allowed = []
        for d, mp, c in subs:
            m_d = p**d - 1
            roots = set()
            for s in range(m_d):
                y = F.exp(c * s)
                if F.eval_fp_poly(mp, y) == 0:
                    roots.add((c * s) // c % m_d)
            allowed.append((m_d, roots))
        for x in F.elements_lex():
            if not x:
                continue
            t = F.log(x)
            if gcd(t, n) != 1:
                continue
            if all(t % m_d in roots for m_d, roots in allowed):
                break
        else:
            raise FieldError(f"no compatible generator for GF({p}^{k})")
        # re-index the tables relative to the chosen generator
        exp0 = F._exp[:n].copy()
        ti = t
        exp = exp0[(ti * np.arange(n)) % n]
        F._exp = np.concatenate([exp, exp])
        log = np.full(F.q, -1, dtype=np.int64)
        log[exp] = np.arange(n)
        F._log = log
        F.gen = x
        return F
    # compatibility with F_p forces the norm of the generator to be g_1
    g1 = make_field(p, 1).gen if k > 1 else None
    for x in F.elements_lex():
        if not x or (g1 is not None and F.norm(x) != g1) or F.order(x) != n:
            continue
        if all(F.eval_fp_poly(mp, F.pow(x, c)) == 0 for _, mp, c in subs):
            F.gen = x
            return F
    raise FieldError(f"no compatible generator for GF({p}^{k})")


@dataclass(frozen=True)
class FFElem:
    """An element of a finite field, stored by its integer encoding."""

    field: FieldDesc
    value: int

    @property
    def coords(self):
        return self.field.coords(self.value)

    def _other(self, o):
        if isinstance(o, FFElem):
            if o.field != self.field:
                raise FieldError("elements of different fields")
            return o.value
        return int(o) % self.field.p if self.field.k == 1 else self.field.from_coords([int(o)])

    def __add__(self, o):
        return FFElem(self.field, self.field.add(self.value, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FFElem(self.field, self.field.sub(self.value, self._other(o)))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.value))

    def __mul__(self, o):
        return FFElem(self.field, self.field.mul(self.value, self._other(o)))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return FFElem(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FFElem(self.field, self.field.inv(self.value))

    def __truediv__(self, o):
        return self * FFElem(self.field, self._other(o)).inverse()

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field}({self.value})"


def elem(F, value):
    return FFElem(F, value)


def generator(F):
    return FFElem(F, F.gen)


def discrete_log(x):
    """Exponent ``a`` in [0, q-2] with generator**a == x."""
    return x.field.log(x.value)


def embed_value(x, src, target):
    """Integer-encoded version of :func:`embed`."""
    if target.p != src.p or target.k % src.k:
        raise FieldError(f"cannot embed {src} into {target}")
    if x == 0:
        return 0
    if src == target:
        return x
    c = (target.q - 1) // (src.q - 1)
    return target.exp(src.log(x) * c)


def embed(x, target):
    """Image of ``x`` under the embedding sending gen_a to gen_ab^((q_ab - 1)/(q_a - 1))."""
    return FFElem(target, embed_value(x.value, x.field, target))


@lru_cache(maxsize=256)
def embed_table(src, target):
    """Vector of images of all elements of ``src`` in ``target`` (index = encoding)."""
    return np.array([embed_value(x, src, target) for x in range(src.q)], dtype=np.int64)


def restrict_value(y, big, small):
    """Inverse of :func:`embed_value` on the image of ``small`` inside ``big``."""
    if y == 0:
        return 0
    c = (big.q - 1) // (small.q - 1)
    t = big.log(y)
    if t % c:
        raise FieldError(f"element {y} of {big} does not lie in {small}")
    return small.exp(t // c)


def frobenius(x):
    return FFElem(x.field, x.field.pow(x.value, x.field.p))


def lift_root_of_unity(x, N):
    """Lift of a root of unity in F_{p^k} to Q(zeta_N).

    With ``m`` the order of ``x`` and ``g_m = gen^((q-1)/m)``, writing
    ``x = g_m^a`` gives ``zeta_N^(a N/m)``.
    """
    F = x.field
    return lift_value(F, x.value, N)


def lift_value(F, x, N):
    if x == 0:
        raise FieldError("cannot lift 0")
    m = F.order(x)
    if N % m:
        raise FieldError(f"order {m} of {x} does not divide {N}")
    t = F.log(x)
    step = (F.q - 1) // m
    a = t // step
    return CycNum.zeta(N, a * (N // m))


def lift_exponent(F, x, N):
    """Exponent ``j`` with lift(x) = zeta_N^j (``N`` must be a multiple of the order)."""
    m = F.order(x)
    if N % m:
        raise FieldError(f"order {m} of {x} does not divide {N}")
    return F.log(x) // ((F.q - 1) // m) * (N // m)


def reduce_root(M, t, F):
    """Reduction into ``F`` of the root of unity zeta_M^t.

    The characteristic-p part is killed; the prime-to-p part is mapped so
    that :func:`lift_value` returns it exactly.
    """
    p = F.p
    Mp, s = M, 0
    while Mp % p == 0:
        Mp //= p
        s += 1
    if Mp == 1:
        return 1
    alpha = pow(p**s, -1, Mp)
    j = t * alpha % Mp
    g = gcd(j, Mp)
    m0, j0 = Mp // g, j // g
    if (F.q - 1) % m0:
        raise FieldError(f"{F} has no primitive {m0}-th root of unity (needs conductor {m0})")
    return F.exp(j0 * ((F.q - 1) // m0))
