"""Matrix representations of GL_2(F_q) and its standard subgroups.

A :class:`MatRep` stores the images of a fixed generator list.  Over a finite
field the images are coordinate arrays (see :mod:`gl2mod.linalg`); over
Q(zeta_N) they are object arrays of :class:`~gl2mod.cyclo.CycNum`.

Generators (``g`` is the generator of F_q):

* ``GL2``: ``[[1,1],[0,1]]``, ``[[1,0],[1,1]]``, ``diag(g,1)``
* ``B``:   ``diag(g,1)``, ``diag(1,g)``, ``[[1,1],[0,1]]``
* ``T``:   ``diag(g,1)``, ``diag(1,g)``
* ``U``:   ``[[1,g^j],[0,1]]`` for ``j < [F_q:F_p]``
* ``P0``:  ``diag(g,1)``, ``[[1,1],[0,1]]``
"""

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd
from typing import NamedTuple

import numpy as np

from . import linalg as la
from ._nt import coprime_part, mult_order, lcm
from .cyclo import CycNum, nullspace_exact, solve_exact
from .ff import FieldError, embed_value, make_field, reduce_root
from .gl2 import gl2, prime_power

TAGS = ("GL2", "B", "T", "U", "P0")


class CycField:
    """The cyclotomic field Q(zeta_N) used as a coefficient field."""

    characteristic = 0

    def __init__(self, N):
        self.N = int(N)
        self.p = 0

    def __eq__(self, other):
        return isinstance(other, CycField) and other.N == self.N

    def __hash__(self):
        return hash(("CycField", self.N))

    def __repr__(self):
        return f"Q(zeta_{self.N})"


# -- matrix back ends ----------------------------------------------------------

class _FFOps:
    def __init__(self, F):
        self.F = F

    def eye(self, n):
        return la.eye(self.F, n)

    def zeros(self, n, m):
        return la.zeros(self.F, n, m)

    def mul(self, A, B):
        return la.matmul(self.F, A, B)

    def inv(self, A):
        return la.inverse(self.F, A)

    def kron(self, A, B):
        return la.kron(self.F, A, B)

    def transpose(self, A):
        return la.transpose(A)

    def equal(self, A, B):
        return la.equal(A % self.F.p, B % self.F.p)

    def scale(self, c, A):
        return la.smul(self.F, c, A)

    def dim(self, A):
        return A.shape[1]

    def from_entries(self, rows):
        return la.from_ints(self.F, rows) if len(rows) else la.zeros(self.F, 0, 0)


class _CycOps:
    def __init__(self, K):
        self.K = K

    @staticmethod
    def _arr(rows, n, m):
        out = np.empty((n, m), dtype=object)
        for i in range(n):
            for j in range(m):
                out[i, j] = rows[i][j]
        return out

    def zeros(self, n, m):
        return self._arr([[CycNum.rational(0)] * m for _ in range(n)], n, m)

    def eye(self, n):
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = CycNum.rational(1)
        return out

    def mul(self, A, B):
        n, m = A.shape[0], B.shape[1]
        out = self.zeros(n, m)
        for i in range(n):
            row = [(t, A[i, t]) for t in range(A.shape[1]) if not A[i, t].is_zero()]
            for j in range(m):
                acc = CycNum.rational(0)
                for t, a in row:
                    b = B[t, j]
                    if not b.is_zero():
                        acc = acc + a * b
                out[i, j] = acc
        return out

    def inv(self, A):
        n = A.shape[0]
        cols = []
        for j in range(n):
            e = [CycNum.rational(1 if i == j else 0) for i in range(n)]
            sol = solve_exact([list(r) for r in A], e)
            if sol.status != "unique":
                raise ValueError("matrix is singular")
            cols.append(sol.x)
        return self._arr([[cols[j][i] for j in range(n)] for i in range(n)], n, n)

    def kron(self, A, B):
        n1, m1 = A.shape
        n2, m2 = B.shape
        out = self.zeros(n1 * n2, m1 * m2)
        for i in range(n1):
            for j in range(m1):
                if A[i, j].is_zero():
                    continue
                for r in range(n2):
                    for s in range(m2):
                        if not B[r, s].is_zero():
                            out[i * n2 + r, j * m2 + s] = A[i, j] * B[r, s]
        return out

    def transpose(self, A):
        return A.T.copy()

    def equal(self, A, B):
        return A.shape == B.shape and all(x == y for x, y in zip(A.flat, B.flat))

    def scale(self, c, A):
        out = A.copy()
        for idx, v in np.ndenumerate(A):
            out[idx] = v * c
        return out

    def dim(self, A):
        return A.shape[0]

    def from_entries(self, rows):
        n = len(rows)
        return self._arr(rows, n, len(rows[0]) if n else 0)


def ops_for(field):
    if isinstance(field, CycField):
        return _CycOps(field)
    return _FFOps(field)


# -- generators and words ------------------------------------------------------

@lru_cache(maxsize=None)
def generators(q, tag):
    """The fixed generator list (as group elements) of the tagged group."""
    G = gl2(q)
    g = G.F.gen
    u, l = (1, 1, 0, 1), (1, 0, 1, 1)
    h, h2 = (g, 0, 0, 1), (1, 0, 0, g)
    if tag == "GL2":
        return (u, l, h)
    if tag == "B":
        return (h, h2, u)
    if tag == "T":
        return (h, h2)
    if tag == "U":
        return tuple((1, G.F.exp(j), 0, 1) for j in range(G.d))
    if tag == "P0":
        return (h, u)
    raise ValueError(f"unknown group tag {tag!r}")


class GroupGenSet(NamedTuple):
    group_tag: str
    q: int
    generators: tuple


def group_gen_set(q, tag):
    return GroupGenSet(tag, q, generators(q, tag))


def in_subgroup(q, tag, g):
    a, b, c, d = g
    if tag == "GL2":
        return True
    if tag == "B":
        return c == 0
    if tag == "T":
        return b == 0 and c == 0
    if tag == "U":
        return c == 0 and a == 1 and d == 1
    if tag == "P0":
        return c == 0 and d == 1
    raise ValueError(tag)


def subgroup_order(q, tag):
    return {"GL2": (q * q - 1) * (q * q - q), "B": (q - 1) ** 2 * q, "T": (q - 1) ** 2,
            "U": q, "P0": (q - 1) * q}[tag]


def subgroup_elements(q, tag):
    G = gl2(q)
    if tag == "GL2":
        return list(G.elements())
    units = [G.F.exp(i) for i in range(q - 1)]
    if tag == "T":
        return [(a, 0, 0, d) for a in units for d in units]
    if tag == "U":
        return [(1, b, 0, 1) for b in range(q)]
    if tag == "P0":
        return [(a, b, 0, 1) for a in units for b in range(q)]
    return [(a, b, 0, d) for a in units for b in range(q) for d in units]


@lru_cache(maxsize=None)
def _gamma_basis_inverse(q):
    """Matrix converting F_p coordinates into coordinates in the basis g^j."""
    G = gl2(q)
    F, d, p = G.F, G.d, G.p
    cols = [F.coords(F.exp(j)) for j in range(d)]
    M = np.array(cols, dtype=np.int64).T  # column j = coords of g^j
    Fp = make_field(p, 1)
    return la.inverse(Fp, M[None])[0]


def _gamma_coords(q, t):
    G = gl2(q)
    inv = _gamma_basis_inverse(q)
    return [int(x) for x in inv @ np.array(G.F.coords(t), dtype=np.int64) % G.p]


# -- the representation type ---------------------------------------------------

@dataclass(eq=False)
class MatRep:
    """Images of the tagged group's generators, plus lazily cached words."""

    field: object
    q: int
    group_tag: str
    gens: list
    name: str = ""
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.group_tag not in TAGS:
            raise ValueError(f"unknown group tag {self.group_tag!r}")
        n = len(generators(self.q, self.group_tag))
        if len(self.gens) != n:
            raise ValueError(f"{self.group_tag} needs {n} generator images")

    @property
    def ops(self):
        o = self._cache.get("ops")
        if o is None:
            o = self._cache["ops"] = ops_for(self.field)
        return o

    @property
    def dim(self):
        return self.ops.dim(self.gens[0])

    @property
    def is_char0(self):
        return isinstance(self.field, CycField)

    def with_gens(self, gens, name=None):
        return MatRep(self.field, self.q, self.group_tag, list(gens), name or self.name)

    # -- cached building blocks -------------------------------------------
    def _h_pow(self, i):
        n = self.q - 1
        pows = self._cache.get("hpow")
        if pows is None:
            h = self.gens[{"GL2": 2, "B": 0, "T": 0, "P0": 0}[self.group_tag]]
            pows = [self.ops.eye(self.dim)]
            for _ in range(n - 1):
                pows.append(self.ops.mul(pows[-1], h))
            self._cache["hpow"] = pows
        return pows[i % n]

    def _h2_pow(self, j):
        n = self.q - 1
        pows = self._cache.get("h2pow")
        if pows is None:
            tag = self.group_tag
            if tag in ("B", "T"):
                h2 = self.gens[1]
                pows = [self.ops.eye(self.dim)]
                for _ in range(n - 1):
                    pows.append(self.ops.mul(pows[-1], h2))
            elif tag == "GL2":
                s, si = self._s()
                pows = [self.ops.mul(self.ops.mul(s, self._h_pow(i)), si) for i in range(n)]
            else:
                raise ValueError(f"diag(1, x) is not in {tag}")
            self._cache["h2pow"] = pows
        return pows[j % n]

    def _s(self):
        s = self._cache.get("s")
        if s is None:
            F = gl2(self.q).F
            um = self._u(F.neg(1))
            s = self.ops.mul(self.ops.mul(um, self.gens[1]), um)
            self._cache["s"] = s = (s, self.ops.inv(s))
        return s

    def _u(self, t):
        if t == 0:
            return self.ops.eye(self.dim)
        us = self._cache.setdefault("u", {})
        hit = us.get(t)
        if hit is not None:
            return hit
        G = gl2(self.q)
        tag = self.group_tag
        if tag == "U":
            out = self.ops.eye(self.dim)
            for j, c in enumerate(_gamma_coords(self.q, t)):
                for _ in range(c):
                    out = self.ops.mul(out, self.gens[j])
        else:
            u = self.gens[{"GL2": 0, "B": 2, "P0": 1}[tag]]
            j = G.F.log(t)
            out = self.ops.mul(self.ops.mul(self._h_pow(j), u), self._h_pow(-j))
        us[t] = out
        return out

    def _diag(self, a, d):
        F = gl2(self.q).F
        out = self._h_pow(F.log(a))
        if d != 1:
            out = self.ops.mul(out, self._h2_pow(F.log(d)))
        return out

    def image(self, g):
        """Image of the group element ``g = (a, b, c, d)``."""
        g = tuple(int(x) for x in g)
        if not in_subgroup(self.q, self.group_tag, g):
            raise ValueError(f"{g} is not in {self.group_tag}({self.q})")
        a, b, c, d = g
        F = gl2(self.q).F
        if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
            raise ValueError(f"{g} is singular")
        if self.group_tag == "U":
            return self._u(b)
        if c == 0:
            out = self._diag(a, d)
            if b:
                out = self.ops.mul(out, self._u(F.mul(b, F.inv(a))))
            return out
        ci = F.inv(c)
        det = F.sub(F.mul(a, d), F.mul(b, c))
        s, _ = self._s()
        out = self._u(F.mul(a, ci))
        out = self.ops.mul(out, s)
        out = self.ops.mul(out, self._diag(c, F.mul(det, ci)))
        return self.ops.mul(out, self._u(F.mul(d, ci)))

    def trace(self, g):
        """Trace of ``image(g)`` (field element as int, or CycNum)."""
        A = self.image(g)
        if self.is_char0:
            acc = CycNum.rational(0)
            for i in range(A.shape[0]):
                acc = acc + A[i, i]
            return acc
        F = self.field
        return F.from_coords(np.trace(A, axis1=1, axis2=2) % F.p)


# -- relation test -------------------------------------------------------------

def relation_test(M, nwords=50, length=10, seed=0):
    """Check ``rho(word) * image(word^-1) == 1`` on pseudo-random words.

    The group product of each word is computed directly, its inverse is
    mapped through :meth:`MatRep.image` (the word decomposition), so the
    check exercises the generator images as a homomorphism.
    """
    G = gl2(M.q)
    gens = generators(M.q, M.group_tag)
    invs = [G.inv(s) for s in gens]
    imgs = list(M.gens)
    inv_imgs = [M.ops.inv(A) for A in imgs]
    rng = np.random.default_rng(seed)
    eye = M.ops.eye(M.dim)
    for _ in range(nwords):
        g = G.identity()
        A = eye
        for _ in range(length):
            i = int(rng.integers(len(gens)))
            if rng.integers(2):
                g, A = G.mul(g, gens[i]), M.ops.mul(A, imgs[i])
            else:
                g, A = G.mul(g, invs[i]), M.ops.mul(A, inv_imgs[i])
        if not M.ops.equal(M.ops.mul(A, M.image(G.inv(g))), eye):
            return False
    return True


# -- character values ----------------------------------------------------------

def character_value(F, q, e, a):
    """Value at ``g^a`` of the character ``x -> x^e`` of F_q^x with values in ``F``.

    In characteristic p the character is tautological; in characteristic
    ``l != p`` it is the reduction of ``zeta_{q-1}^(a e)``; over Q(zeta_N) it
    is that root of unity itself.
    """
    p, d = prime_power(q)
    if isinstance(F, CycField):
        g = gcd(e, q - 1)
        m = (q - 1) // g  # order of the character
        if F.N % m:
            raise FieldError(f"{F} lacks the {m}-th roots of unity (needs conductor {m})")
        return CycNum.zeta(F.N, a * (e // g) * (F.N // m))
    if F.p == p:
        Fq = make_field(p, d)
        return embed_value(Fq.exp(a * e), Fq, F)
    return reduce_root(q - 1, a * e, F)


def _det_exps(q, tag):
    G = gl2(q)
    return [G.F.log(G.det(s)) for s in generators(q, tag)]


def _one(F):
    return CycNum.rational(1) if isinstance(F, CycField) else 1


# -- constructors --------------------------------------------------------------

def _check_char_p(q, F):
    p, d = prime_power(q)
    if isinstance(F, CycField) or F.p != p or F.k % d:
        raise FieldError(f"{F} does not contain F_{q}")


def standard_rep(q, F=None):
    """The tautological 2-dimensional representation over ``F`` (default F_q)."""
    p, d = prime_power(q)
    F = F or make_field(p, d)
    _check_char_p(q, F)
    Fq = make_field(p, d)
    gens = []
    for (a, b, c, dd) in generators(q, "GL2"):
        rows = [[embed_value(a, Fq, F), embed_value(b, Fq, F)],
                [embed_value(c, Fq, F), embed_value(dd, Fq, F)]]
        gens.append(la.from_ints(F, rows))
    return MatRep(F, q, "GL2", gens, "V")


def zero_rep(q, F, tag="GL2"):
    ops = ops_for(F)
    return MatRep(F, q, tag, [ops.zeros(0, 0) for _ in generators(q, tag)], "0")


def trivial_rep(q, F, tag="GL2"):
    ops = ops_for(F)
    return MatRep(F, q, tag, [ops.eye(1) for _ in generators(q, tag)], "1")


def _sym_matrix(F, A, i):
    """Sym^i of the 2x2 integer-encoded matrix ``A`` (basis x^(i-j) y^j)."""
    (a, b), (c, d) = A

    def pw(u, v, n):
        # coefficients (by power of y) of (u x + v y)^n
        out = [1]
        for _ in range(n):
            nxt = [0] * (len(out) + 1)
            for r, co in enumerate(out):
                nxt[r] = F.add(nxt[r], F.mul(co, u))
                nxt[r + 1] = F.add(nxt[r + 1], F.mul(co, v))
            out = nxt
        return out

    M = [[0] * (i + 1) for _ in range(i + 1)]
    for j in range(i + 1):
        P1 = pw(a, c, i - j)
        P2 = pw(b, d, j)
        for r1, c1 in enumerate(P1):
            if not c1:
                continue
            for r2, c2 in enumerate(P2):
                if c2:
                    M[r1 + r2][j] = F.add(M[r1 + r2][j], F.mul(c1, c2))
    return M


def sym_power(M, i):
    """Sym^i of a 2-dimensional module; ``i = -1`` gives the zero module."""
    if i < -1:
        raise ValueError("symmetric power exponent must be >= -1")
    if i == -1:
        return zero_rep(M.q, M.field, M.group_tag)
    if M.dim != 2 or M.is_char0:
        raise ValueError("sym_power needs a 2-dimensional finite-field module")
    F = M.field
    gens = []
    for A in M.gens:
        ints = la.to_ints(F, A).tolist()
        gens.append(la.from_ints(F, _sym_matrix(F, ints, i)))
    return M.with_gens(gens, f"Sym^{i}({M.name})")


def det_twist(M, j):
    """``det^j`` tensor ``M``."""
    if j == 0:
        return M
    vals = [character_value(M.field, M.q, j, a) for a in _det_exps(M.q, M.group_tag)]
    gens = [M.ops.scale(v, A) for v, A in zip(vals, M.gens)]
    return M.with_gens(gens, f"det^{j}*{M.name}")


def one_dim(q, F, e, tag="GL2"):
    """The character ``det^e`` as a module."""
    M = det_twist(trivial_rep(q, F, tag), e)
    M.name = f"det^{e}"
    return M


def tensor_rep(M1, M2):
    if M1.field != M2.field or M1.group_tag != M2.group_tag or M1.q != M2.q:
        raise ValueError("tensor factors must share field, q and group tag")
    gens = [M1.ops.kron(A, B) for A, B in zip(M1.gens, M2.gens)]
    return M1.with_gens(gens, f"({M1.name})x({M2.name})")


def dual_rep(M):
    gens = [M.ops.transpose(M.ops.inv(A)) for A in M.gens]
    return M.with_gens(gens, f"({M.name})^*")


def direct_sum(M1, M2):
    if M1.is_char0:
        raise ValueError("direct_sum is implemented for finite fields")
    F = M1.field
    n1, n2 = M1.dim, M2.dim
    gens = []
    for A, B in zip(M1.gens, M2.gens):
        C = la.zeros(F, n1 + n2, n1 + n2)
        C[:, :n1, :n1] = A
        C[:, n1:, n1:] = B
        gens.append(C)
    return M1.with_gens(gens, f"{M1.name}+{M2.name}")


def frob_twist(M, times=1):
    """Precompose with the entrywise p-th power map of GL_2(F_q)."""
    p, d = prime_power(M.q)
    if M.is_char0 or M.field.p != p:
        raise FieldError("Frobenius twists are defined for characteristic-p modules")
    times %= d
    if times == 0:
        return M
    F = gl2(M.q).F
    e = p**times
    imgs = []
    for s in generators(M.q, M.group_tag):
        fs = tuple(F.pow(x, e) for x in s)
        imgs.append(M.image(fs))
    return M.with_gens(imgs, f"Fr^{times}({M.name})")


def restrict(M, tag):
    """Restriction to a standard subgroup."""
    if tag == M.group_tag:
        return M
    gens = [M.image(s) for s in generators(M.q, tag)]
    return MatRep(M.field, M.q, tag, gens, f"Res_{tag}({M.name})")


# P^1 and the principal series -------------------------------------------------

@lru_cache(maxsize=None)
def p1_points(q):
    """Points of P^1(F_q) as bottom rows: infinity ``(1, 0)`` first, then ``(t, 1)``."""
    return [(1, 0)] + [(t, 1) for t in range(q)]


def _coset_rep(P):
    c, d = P
    if d == 0:
        return (0, 1, 1, 0)
    return (1, 0, c, 1)


def _normalize_point(F, c, d):
    if d == 0:
        return (1, 0)
    return (F.mul(c, F.inv(d)), 1)


def _ps_matrix(q, F, e1, e2, g):
    G = gl2(q)
    pts = p1_points(q)
    index = {P: i for i, P in enumerate(pts)}
    n = len(pts)
    zero = CycNum.rational(0) if isinstance(F, CycField) else 0
    rows = [[zero] * n for _ in range(n)]
    for Q in pts:
        gQ = _coset_rep(Q)
        x = G.mul(gQ, g)
        P = _normalize_point(G.F, x[2], x[3])
        b = G.mul(x, G.inv(_coset_rep(P)))
        assert b[2] == 0
        v1 = character_value(F, q, e1, G.F.log(b[0]))
        v2 = character_value(F, q, e2, G.F.log(b[3]))
        rows[index[Q]][index[P]] = v1 * v2 if isinstance(F, CycField) else F.mul(v1, v2)
    return ops_for(F).from_entries(rows)


def induced_from_borel(q, e1, e2, F):
    """Ps(e1, e2): functions with ``f(bg) = chi1(b11) chi2(b22) f(g)``, right translation.

    The basis is indexed by P^1(F_q) through the bottom row of the coset
    representative, infinity first, then ``[t:1]`` in integer order of ``t``.
    """
    gens = [_ps_matrix(q, F, e1, e2, s) for s in generators(q, "GL2")]
    return MatRep(F, q, "GL2", gens, f"Ps({e1},{e2})")


class PermP1(NamedTuple):
    module: MatRep
    constants: object
    sum_map: object


def perm_p1(q, F):
    """Permutation module on P^1(F_q), with its constants and sum-of-values map."""
    M = induced_from_borel(q, 0, 0, F)
    M.name = "perm(P1)"
    ops = M.ops
    n = q + 1
    one = _one(F)
    consts = ops.from_entries([[one] * n])
    summ = ops.from_entries([[one] for _ in range(n)])
    return PermP1(M, consts, summ)


def apply_sum_map(P, vec):
    """Sum of the values of a function on P^1 (``vec`` is a 1 x (q+1) row)."""
    return P.module.ops.mul(vec, P.sum_map)


def whittaker_mirabolic(q, F, psi_exp=1):
    """Ind_U^{P0} psi on the basis delta_a, a in F_q^x (by discrete log).

    ``psi(t) = zeta_p^(psi_exp * c_0(t))`` with ``c_0`` the constant
    coordinate of ``t``; the action is
    ``[[a', b'], [0, 1]] delta_a = psi(a b' / a') delta_{a / a'}``.
    """
    p, d = prime_power(q)
    if not isinstance(F, CycField) and F.p == p:
        raise FieldError("psi is trivial in characteristic p")
    if psi_exp % p == 0:
        raise ValueError("psi must be nontrivial")
    G = gl2(q)
    Fq = G.F
    n = q - 1
    units = [Fq.exp(i) for i in range(n)]
    index = {a: i for i, a in enumerate(units)}

    def psi(t):
        c0 = Fq.coords(t)[0] * psi_exp % p
        if isinstance(F, CycField):
            if F.N % p:
                raise FieldError(f"{F} lacks p-th roots of unity (needs conductor {p})")
            return CycNum.zeta(F.N, c0 * (F.N // p))
        return reduce_root(p, c0, F)

    gens = []
    for (a1, b1, _, _) in generators(q, "P0"):
        zero = CycNum.rational(0) if isinstance(F, CycField) else 0
        rows = [[zero] * n for _ in range(n)]
        ai = Fq.inv(a1)
        for a in units:
            tgt = Fq.mul(a, ai)
            rows[index[tgt]][index[a]] = psi(Fq.mul(Fq.mul(a, b1), ai))
        gens.append(ops_for(F).from_entries(rows))
    return MatRep(F, q, "P0", gens, f"Whittaker(psi^{psi_exp})")


# -- fields for modular work ---------------------------------------------------

def splitting_degree(q, ell, extra=1):
    """Degree over F_ell of the field with roots of unity of order ``(q^2-1)'``."""
    m = coprime_part(lcm(q * q - 1, extra), ell)
    return mult_order(ell, m) if m > 1 else 1


def module_field(q, ell):
    """Default coefficient field for mod-``ell`` modules of GL_2(F_q).

    For ``ell == p`` this is F_q; otherwise the extension of F_ell generated
    by the roots of unity of order prime to ``ell`` dividing ``q^2 - 1``
    (a splitting field for GL_2(F_q)).
    """
    p, d = prime_power(q)
    if ell == p:
        return make_field(p, d)
    return make_field(ell, splitting_degree(q, ell))


def whittaker_field(q, ell):
    """The smallest field of characteristic ``ell`` containing the p-th roots of unity."""
    p, _ = prime_power(q)
    if ell == p:
        raise FieldError("psi is trivial in characteristic p")
    return make_field(ell, mult_order(ell, p))


# -- subspaces, subs and quotients ---------------------------------------------

def spin(M, V, transposed=False):
    """Submodule spanned by the rows of ``V`` (RREF rows, pivots).

    Rows are column vectors written as rows; the action on them is
    ``v -> v @ rho(g)^T``.  With ``transposed=True`` the dual action
    ``w -> w @ rho(g)`` is used instead.
    """
    F = M.field
    mats = M.gens if transposed else M._cache.setdefault(
        "gensT", [la.transpose(A) for A in M.gens])
    E = la.Echelon(F, M.dim)
    new = E.add(V)
    while new.shape[1]:
        images = np.concatenate([la.matmul(F, new, A) for A in mats], axis=1)
        new = E.add(images)
        if E.dim == M.dim:
            break
    return E.rows, list(E.pivots)


def sub_rep(M, S, pivots):
    """Action on the invariant subspace spanned by the RREF rows ``S``."""
    F = M.field
    gens = []
    ST = la.transpose(S)
    for A in M.gens:
        gens.append(la.matmul(F, A[:, pivots, :], ST))
    return M.with_gens(gens, f"sub({M.name})")


def quotient_rep(M, S, pivots):
    """Action on ``M / span(S)`` in the basis of non-pivot coordinates."""
    F = M.field
    non = [j for j in range(M.dim) if j not in set(pivots)]
    gens = []
    SnT = la.transpose(S[:, :, non])
    for A in M.gens:
        Q = A[:, non][:, :, non]
        corr = la.matmul(F, SnT, A[:, pivots][:, :, non])
        gens.append((Q - corr) % F.p)
    return M.with_gens(gens, f"quot({M.name})")


def is_invariant(M, S):
    """True iff the row space of ``S`` is stable under all generators."""
    F = M.field
    r = la.rank(F, S) if S.shape[1] else 0
    for A in M.gens:
        img = la.matmul(F, S, la.transpose(A))
        if la.rank(F, np.concatenate([S, img], axis=1)) != r:
            return False
    return True


# -- invariants and coinvariants -----------------------------------------------

def _u_images(M):
    return [M.image(s) for s in generators(M.q, "U")]


def fixed_space(M, H="U"):
    """Basis (rows) of the joint fixed space of ``H``."""
    if H != "U":
        raise ValueError("only U is supported")
    if M.is_char0:
        raise ValueError("fixed spaces are computed for finite-field modules only")
    F = M.field
    if M.dim == 0:
        return la.zeros(F, 0, 0)
    I = la.eye(F, M.dim)
    stacked = np.concatenate([(A - I) % F.p for A in _u_images(M)], axis=1)
    return la.nullspace(F, stacked)


def _torus_rep(M, basis_action):
    return MatRep(M.field, M.q, "T", basis_action, f"T({M.name})")


def invariants(M, H="U"):
    """U-invariants with the induced T-action (a T-module)."""
    if M.group_tag not in ("GL2", "B"):
        raise ValueError("invariants need a group containing T")
    F = M.field
    S = fixed_space(M, H)
    if S.shape[1] == 0:
        return zero_rep(M.q, F, "T")
    R, piv = la.rref(F, S)
    gens = []
    RT = la.transpose(R)
    for s in generators(M.q, "T"):
        A = M.image(s)
        gens.append(la.matmul(F, A[:, piv, :], RT))
    return _torus_rep(M, gens)


def coinvariants(M, H="U"):
    """U-coinvariants ``M / span{v - u v}`` with the induced T-action."""
    if M.group_tag not in ("GL2", "B"):
        raise ValueError("coinvariants need a group containing T")
    if H != "U":
        raise ValueError("only U is supported")
    if M.is_char0:
        raise ValueError("coinvariants are computed for finite-field modules only")
    F = M.field
    if M.dim == 0:
        return zero_rep(M.q, F, "T")
    I = la.eye(F, M.dim)
    cols = np.concatenate([la.transpose((A - I) % F.p) for A in _u_images(M)], axis=1)
    if cols.any():
        S, piv = la.rref(F, cols)
    else:
        S, piv = la.zeros(F, 0, M.dim), []
    T = MatRep(F, M.q, "T", [M.image(s) for s in generators(M.q, "T")], M.name)
    if not piv:
        return _torus_rep(M, T.gens)
    Q = quotient_rep(T, S, piv)
    return _torus_rep(M, Q.gens)


# -- Hom spaces ----------------------------------------------------------------

class HomSpace(NamedTuple):
    dim: int
    basis: list  # matrices X (dim2 x dim1) with rho2 X = X rho1


def _hom_kronecker(M1, M2):
    F = M1.field
    d1, d2 = M1.dim, M2.dim
    I1, I2 = la.eye(F, d1), la.eye(F, d2)
    blocks = []
    for A, B in zip(M1.gens, M2.gens):
        blocks.append((la.kron(F, I2, la.transpose(A)) - la.kron(F, B, I1)) % F.p)
    N = la.nullspace(F, np.concatenate(blocks, axis=1))
    return [N[:, i].reshape(F.k, d2, d1) for i in range(N.shape[1])]


def _spin_record(M, v):
    """Spin one vector recording (parent, generator) for each new basis vector."""
    F = M.field
    gensT = [la.transpose(A) for A in M.gens]
    E = la.Echelon(F, M.dim)
    vecs = [v]
    record = [(-1, -1)]
    E.add(v[:, None, :])
    i = 0
    while i < len(vecs) and E.dim < M.dim:
        for gi, AT in enumerate(gensT):
            w = la.matmul(F, vecs[i][:, None, :], AT)[:, 0, :]
            if E.add(w[:, None, :]).shape[1]:
                vecs.append(w)
                record.append((i, gi))
        i += 1
    return np.stack(vecs, axis=1), record


def _hom_cyclic(M1, M2, V, record):
    """Hom(M1, M2) for cyclic M1 with spinning basis ``V`` built from ``record``."""
    F = M1.field
    d1, d2 = M1.dim, M2.dim
    Vinv = la.inverse(F, V)
    # Y_i = images of the spin vectors applied to candidate images (columns)
    K = la.eye(F, d2)  # rows: current candidate images w of the cyclic vector
    Y = [la.transpose(K)]
    for (par, gi) in record[1:]:
        Y.append(la.matmul(F, M2.gens[gi], Y[par]))
    for gi, A in enumerate(M1.gens):
        # coefficients of rho1(g) v_i in the spin basis: rows of C
        C = la.matmul(F, la.matmul(F, V, la.transpose(A)), Vinv)
        Cints = la.to_ints(F, C)
        for i in range(d1):
            if K.shape[1] == 0:
                return []
            lhs = la.matmul(F, M2.gens[gi], Y[i])
            for j in np.nonzero(Cints[i])[0]:
                lhs = (lhs - la.smul(F, int(Cints[i, j]), Y[j])) % F.p
            if not lhs.any():
                continue
            Nc = la.nullspace(F, lhs)  # combinations of current candidates
            K = la.matmul(F, Nc, K)
            NT = la.transpose(Nc)
            Y = [la.matmul(F, y, NT) for y in Y]
    # hom for candidate w maps v_i -> Y_i column
    out = []
    for c in range(K.shape[1]):
        images = np.stack([y[:, :, c] for y in Y], axis=2)  # d2 x d1 in spin basis
        out.append(la.matmul(F, images, la.transpose(Vinv)))
    return out


def hom_space(M1, M2, seed=0):
    """Intertwiners ``X`` with ``rho2(g) X = X rho1(g)`` for all generators."""
    if M1.group_tag != M2.group_tag or M1.q != M2.q or M1.field != M2.field:
        raise ValueError("hom_space needs modules for the same group over the same field")
    if M1.dim == 0 or M2.dim == 0:
        return HomSpace(0, [])
    if M1.is_char0:
        return _hom_char0(M1, M2)
    F = M1.field
    rng = np.random.default_rng(seed)
    for _ in range(3):
        v = la.from_ints(F, rng.integers(0, F.q, size=(1, M1.dim)))[:, 0, :]
        if not v.any():
            continue
        V, record = _spin_record(M1, v)
        if V.shape[1] == M1.dim:
            basis = _hom_cyclic(M1, M2, V, record)
            return HomSpace(len(basis), basis)
    if M1.dim * M2.dim > 2500:
        raise ValueError("hom_space: module is not cyclic and too large for the Kronecker system")
    basis = _hom_kronecker(M1, M2)
    return HomSpace(len(basis), basis)


def _hom_char0(M1, M2):
    d1, d2 = M1.dim, M2.dim
    rows = []
    zero = CycNum.rational(0)
    for A, B in zip(M1.gens, M2.gens):
        # (X A - B X)[r, c] = sum_t X[r,t] A[t,c] - sum_t B[r,t] X[t,c]
        for r in range(d2):
            for c in range(d1):
                row = [zero] * (d1 * d2)
                for t in range(d1):
                    if not A[t, c].is_zero():
                        row[r * d1 + t] = row[r * d1 + t] + A[t, c]
                for t in range(d2):
                    if not B[r, t].is_zero():
                        row[t * d1 + c] = row[t * d1 + c] - B[r, t]
                if any(not x.is_zero() for x in row):
                    rows.append(row)
    if rows:
        basis = nullspace_exact(rows)
    else:
        basis = [[CycNum.rational(int(i == j)) for i in range(d1 * d2)] for j in range(d1 * d2)]
    mats = []
    for vec in basis:
        X = np.empty((d2, d1), dtype=object)
        for r in range(d2):
            for c in range(d1):
                X[r, c] = vec[r * d1 + c]
        mats.append(X)
    return HomSpace(len(mats), mats)


def is_intertwiner(M1, M2, X):
    return all(M1.ops.equal(M1.ops.mul(B, X), M1.ops.mul(X, A)) for A, B in zip(M1.gens, M2.gens))
