"""Small integer number theory: divisors, factorisation, Kronecker symbol."""

from functools import lru_cache
from math import gcd, isqrt

from .errors import NotPrime


def factorize(n):
    """Return the prime factorisation of ``|n|`` as an ordered dict ``{p: e}``."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def divisors(n):
    """Sorted tuple of the positive divisors of n."""
    if n < 1:
        raise ValueError(f"divisors of non-positive integer {n}")
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return tuple(small + large)


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % p for p in range(3, isqrt(n) + 1, 2))


def require_prime(p):
    if not (isinstance(p, int) and is_prime(p)):
        raise NotPrime(f"{p} is not prime")


def euler_phi(n):
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def sigma(n, k):
    """Sum of the k-th powers of the divisors of n."""
    return sum(d**k for d in divisors(n))


def squarefree_part(n):
    """The squarefree integer m with n = m * square (sign kept)."""
    if n == 0:
        raise ValueError("squarefree part of 0")
    m = 1
    for p, e in factorize(n).items():
        if e % 2:
            m *= p
    return m if n > 0 else -m


def fundamental_discriminant(n):
    """Discriminant of the quadratic field Q(sqrt(n)); 1 when n is a square.

    For a nonzero integer n, ``kronecker(fundamental_discriminant(n), d)``
    equals ``kronecker(n, d)`` for every d coprime to 2n.
    """
    m = squarefree_part(n)
    if m == 1:
        return 1
    return m if m % 4 == 1 else 4 * m


def kronecker(a, n):
    """The Kronecker symbol (a / n) for arbitrary integers a and n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor of two in n
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
        n >>= v
    # Jacobi symbol (a / n) for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def coprime(a, b):
    return gcd(a, b) == 1
