"""Dense linear algebra over F_{p^k} on coordinate arrays.

A matrix over F is an int64 array of shape ``(k, rows, cols)``: slice ``i``
holds the coefficient of ``a^i``.  Prime fields use ``k == 1``.  All
functions take the field first and return fresh arrays reduced mod p.
"""

import numpy as np



def zeros(F, n, m):
    return np.zeros((F.k, n, m), dtype=np.int64)


def eye(F, n):
    out = zeros(F, n, n)
    out[0] = np.eye(n, dtype=np.int64)
    return out


def from_ints(F, rows):
    """Integer-encoded element matrix -> coordinate array."""
    a = np.asarray(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a[None, :]
    return F.to_coord_array(a)


def to_ints(F, A):
    return F.from_coord_array(A)


def scalar(F, x):
    """Coordinates of one element as a length-k vector."""
    return np.array(F.coords(x), dtype=np.int64)


def _reduce(F, prod):
    """Fold a product array with leading axis 2k-1 back to k coordinates."""
    k, p = F.k, F.p
    if k == 1:
        return prod[:1] % p
    out = prod[:k] % p
    for t in range(k, 2 * k - 1):
        pt = prod[t] % p
        if not pt.any():
            continue
        for i in range(k):
            r = int(F.red[t, i])
            if r:
                out[i] += r * pt
    return out % p


def matmul(F, A, B):
    """Product of coordinate arrays.

    All k*k coordinate products are done in one float64 BLAS call; every
    partial sum is below ``n * p**2 < 2**53`` so the result is exact.
    """
    k, p = F.k, F.p
    n, m = A.shape[1], A.shape[2]
    r = B.shape[2]
    if n == 0 or r == 0 or m == 0:
        return np.zeros((k, n, r), dtype=np.int64)
    if m * (p - 1) ** 2 >= 1 << 53:
        # large primes: exact object arithmetic
        Ao, Bo = A.astype(object), B.astype(object)
        prod = np.zeros((2 * k - 1, n, r), dtype=object)
        for i in range(k):
            for j in range(k):
                prod[i + j] += (Ao[i] @ Bo[j]) % p
        return _reduce(F, (prod % p).astype(np.int64))
    if k == 1:
        P = A[0].astype(np.float64) @ B[0].astype(np.float64)
        return (P.astype(np.int64) % p)[None]
    Af = A.reshape(k * n, m).astype(np.float64)
    Bf = B.transpose(1, 0, 2).reshape(m, k * r).astype(np.float64)
    P = (Af @ Bf).astype(np.int64).reshape(k, n, k, r) % p
    prod = np.zeros((2 * k - 1, n, r), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            prod[i + j] += P[i, :, j, :]
    return _reduce(F, prod)


def matvec_rows(F, V, A):
    """Rows of ``V`` times ``A`` (V: (k, r, n), A: (k, n, m))."""
    return matmul(F, V, A)


def smul(F, c, A):
    """Scalar (integer-encoded) times array."""
    if c == 0:
        return np.zeros_like(A)
    if c == 1:
        return A.copy()
    if F.k == 1:
        return A * c % F.p
    cc = F.coords(c)
    prod = np.zeros((2 * F.k - 1,) + A.shape[1:], dtype=np.int64)
    for i, ci in enumerate(cc):
        if ci:
            prod[i:i + F.k] += ci * A
    return _reduce(F, prod)


def emul(F, A, B):
    """Entrywise product of two coordinate arrays of equal shape."""
    k, p = F.k, F.p
    if k == 1:
        return A * B % p
    prod = np.zeros((2 * k - 1,) + A.shape[1:], dtype=np.int64)
    for i in range(k):
        for j in range(k):
            prod[i + j] += A[i] * B[j]
    return _reduce(F, prod)


def outer(F, u, v):
    """Outer product of coordinate vectors u (k, n) and v (k, m)."""
    k, p = F.k, F.p
    if k == 1:
        return (np.multiply.outer(u[0], v[0]) % p)[None]
    prod = np.zeros((2 * k - 1, u.shape[1], v.shape[1]), dtype=np.int64)
    for i in range(k):
        if not u[i].any():
            continue
        for j in range(k):
            prod[i + j] += np.multiply.outer(u[i], v[j])
    return _reduce(F, prod)


def add(F, A, B):
    return (A + B) % F.p


def sub(F, A, B):
    return (A - B) % F.p


def transpose(A):
    return np.ascontiguousarray(A.transpose(0, 2, 1))


def kron(F, A, B):
    k, p = F.k, F.p
    if k == 1:
        return (np.kron(A[0], B[0]) % p)[None]
    n = A.shape[1] * B.shape[1]
    m = A.shape[2] * B.shape[2]
    prod = np.zeros((2 * k - 1, n, m), dtype=np.int64)
    for i in range(k):
        if not A[i].any():
            continue
        for j in range(k):
            prod[i + j] += np.kron(A[i], B[j])
    return _reduce(F, prod)


def is_zero(A):
    return not A.any()


def equal(A, B):
    return A.shape == B.shape and np.array_equal(A, B)


def _entry(F, A, i, j):
    if F.k == 1:
        return int(A[0, i, j])
    return F.from_coords(A[:, i, j])


TABLE_RREF_LIMIT = 1024


_TABLES = {}


def _tables(F):
    """Addition, multiplication, negation and inverse tables of a small field."""
    t = _TABLES.get(F)
    if t is None:
        q = F.q
        dig = F.digits
        pw = np.array([F.p**i for i in range(F.k)], dtype=np.int64)
        add = (((dig[:, None, :] + dig[None, :, :]) % F.p) @ pw).astype(np.int32)
        neg = ((-dig) % F.p) @ pw
        mul = np.zeros((q, q), dtype=np.int32)
        idx = np.arange(1, q)
        lg = F._log[idx]
        mul[1:, 1:] = F._exp[(lg[:, None] + lg[None, :]) % (q - 1)]
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = F._exp[(-lg) % (q - 1)]
        t = _TABLES[F] = (add, mul, neg.astype(np.int32), inv)
    return t


def _rref_tables(F, M, limit):
    add, mul, neg, inv = _tables(F)
    M = M.astype(np.int32)
    rows = M.shape[0]
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        iv = inv[M[r, c]]
        if iv != 1:
            M[r] = mul[iv, M[r]]
        f = M[:, c].copy()
        f[r] = 0
        hit = np.nonzero(f)[0]
        if len(hit):
            row = neg[M[r]]
            M[hit] = add[M[hit], mul[f[hit][:, None], row[None, :]]]
        pivots.append(c)
        r += 1
    return M[:r].astype(np.int64), pivots


def rref(F, A, ncols=None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots`` lists their leading columns.  When ``ncols`` is given, pivots
    are only searched among the first ``ncols`` columns.
    """
    k, rows, cols = A.shape
    limit = cols if ncols is None else ncols
    if k > 1 and F.q <= TABLE_RREF_LIMIT and F.has_tables:
        R, piv = _rref_tables(F, F.from_coord_array(A % F.p), limit)
        return F.to_coord_array(R).reshape(k, len(piv), cols), piv
    A = A.copy() % F.p
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        col = A[:, r:, c]
        nz = np.nonzero(col.any(axis=0))[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[:, [r, piv]] = A[:, [piv, r]]
        inv = F.inv(_entry(F, A, r, c))
        if inv != 1:
            A[:, r] = smul(F, inv, A[:, r][:, None, :])[:, 0]
        colv = A[:, :, c].copy()
        colv[:, r] = 0
        if colv.any():
            A = (A - outer(F, colv, A[:, r])) % F.p
        pivots.append(c)
        r += 1
    return A[:, :r], pivots


def rank(F, A):
    if A.shape[1] == 0 or A.shape[2] == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F, A):
    """Basis of {x : A x = 0} as the rows of a (k, d, n) array."""
    n = A.shape[2]
    if A.shape[1] == 0:
        return eye(F, n)
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    out = zeros(F, len(free), n)
    for t, fc in enumerate(free):
        out[0, t, fc] = 1
        for i, pc in enumerate(piv):
            out[:, t, pc] = (-R[:, i, fc]) % F.p
    return out


def left_nullspace(F, A):
    """Basis of {y : y A = 0} as rows."""
    return nullspace(F, transpose(A))


def nullity(F, A):
    return A.shape[2] - rank(F, A)


def inverse(F, A):
    n = A.shape[1]
    aug = np.concatenate([A, eye(F, n)], axis=2)
    R, piv = rref(F, aug, ncols=n)
    if piv != list(range(n)):
        raise ValueError("matrix is singular")
    return np.ascontiguousarray(R[:, :, n:])


def solve_rows(F, X, B):
    """Find ``C`` with ``C @ B == X`` for the rows of X in the row space of B.

    ``B`` must have independent rows.  Returns None when some row of X is
    outside the row space.
    """
    # [B^T | X^T]: solve B^T c = x for each column
    r = B.shape[1]
    aug = np.concatenate([transpose(B), transpose(X)], axis=2)
    R, piv = rref(F, aug)
    if piv[:r] != list(range(r)):
        raise ValueError("rows of B are dependent")
    if len(piv) > r:
        return None
    return transpose(np.ascontiguousarray(R[:, :r, r:]))


def power(F, A, e):
    n = A.shape[1]
    out = eye(F, n)
    base = A
    while e:
        if e & 1:
            out = matmul(F, out, base)
        base = matmul(F, base, base)
        e >>= 1
    return out


class Echelon:
    """An incrementally grown subspace kept in reduced row echelon form."""

    def __init__(self, F, n):
        self.F = F
        self.n = n
        self.rows = zeros(F, 0, n)
        self.pivots = []

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, V):
        """Reduce the rows of ``V`` modulo the current subspace."""
        if not self.pivots:
            return V % self.F.p
        coef = V[:, :, self.pivots]
        return (V - matmul(self.F, coef, self.rows)) % self.F.p

    def add(self, V):
        """Insert the rows of V; return the reduced new independent rows (RREF)."""
        W = self.reduce(V)
        if not W.any():
            return zeros(self.F, 0, self.n)
        R, piv = rref(self.F, W)
        if not piv:
            return R
        # clear new pivot columns from old rows
        if self.pivots:
            coef = self.rows[:, :, piv]
            self.rows = (self.rows - matmul(self.F, coef, R)) % self.F.p
        rows = np.concatenate([self.rows, R], axis=1)
        pivots = self.pivots + piv
        order = np.argsort(pivots)
        self.rows = np.ascontiguousarray(rows[:, order])
        self.pivots = [pivots[i] for i in order]
        return R
