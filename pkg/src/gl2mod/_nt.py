"""Small integer number-theory helpers (trial division scale)."""

from functools import lru_cache, reduce
from math import gcd


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=4096)
def _factor_cached(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return tuple(sorted(out.items()))


def factorize(n):
    """Prime factorization of a positive integer as a ``{prime: exponent}`` dict."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    return dict(_factor_cached(n))


def prime_divisors(n):
    return sorted(factorize(n))


def divisors(n):
    divs = [1]
    for pr, e in factorize(n).items():
        divs = [d * pr**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def lcm(*args):
    return reduce(lambda a, b: a * b // gcd(a, b), args, 1)


def coprime_part(n, prime):
    """Largest divisor of ``n`` not divisible by ``prime``."""
    while n % prime == 0:
        n //= prime
    return n


def mult_order(a, m):
    """Multiplicative order of ``a`` modulo ``m`` (``m >= 1``, ``gcd(a, m) == 1``)."""
    if m == 1:
        return 1
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    order = 1
    for pr, e in factorize(m).items():
        # the order modulo pr**e divides phi(pr**e)
        phi = pr ** (e - 1) * (pr - 1)
        o = phi
        for r in prime_divisors(phi):
            while o % r == 0 and pow(a, o // r, pr**e) == 1:
                o //= r
        order = lcm(order, o)
    return order


def euler_phi(n):
    out = n
    for pr in factorize(n):
        out = out // pr * (pr - 1)
    return out


def moebius(n):
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1
