"""Exact integer and rational number theory helpers.

Everything here is deterministic: trial division up to a configured
bound, then a deterministic Miller-Rabin witness set for the cofactor.
Nothing is probabilistic and nothing uses floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator

from .config import DEFAULT_LIMITS, Limits
from .errors import FactorizationTooLarge

# Witnesses proving primality for every n < 3.317e24 (standard deterministic set).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise FactorizationTooLarge(f"{n} exceeds the deterministic primality range")
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    """All primes <= n by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_factors(n: int) -> dict[int, int]:
    """Full factorization of |n| by trial division (small inputs only)."""
    n = abs(n)
    if n <= 1:
        return {}
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None."""
    if q < 2:
        return None
    fac = prime_factors(q)
    if len(fac) != 1:
        return None
    ((p, k),) = fac.items()
    return p, k


def totient(n: int) -> int:
    """Euler's totient."""
    if n < 1:
        raise ValueError("totient needs n >= 1")
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def fraction_is_square(q: Fraction) -> bool:
    """Exact test: q is the square of a rational."""
    if q < 0:
        return False
    return is_square(q.numerator) and is_square(q.denominator)


def squarefree_part(value: int | Fraction, limits: Limits = DEFAULT_LIMITS) -> int:
    """The unique squarefree integer d with value = d * (rational square).

    For a fraction a/b this equals the squarefree part of a*b.  Raises
    FactorizationTooLarge when the cofactor after trial division cannot
    be resolved within the configured bounds.
    """
    if isinstance(value, Fraction):
        n = value.numerator * value.denominator
    else:
        n = int(value)
    if n == 0:
        raise ValueError("squarefree part of 0 is undefined")
    sign = -1 if n < 0 else 1
    n = abs(n)
    d = 1
    bound = limits.factor_trial
    p = 2
    while p * p <= n and p <= bound:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    # n now has no prime factor <= min(bound, sqrt(original n)).
    if n > 1:
        if is_square(n):
            pass  # even exponents throughout
        elif is_prime(n):
            d *= n
        elif n < bound * bound:
            raise AssertionError("cofactor below trial bound squared must be prime")
        elif n < bound**3:
            # no factor <= bound, not prime, not a square: product of two
            # distinct primes, hence squarefree.
            d *= n
        elif n <= limits.factor_abort:
            raise FactorizationTooLarge(f"cofactor {n} not resolved by trial division")
        else:
            raise FactorizationTooLarge(f"{n} exceeds the factorization bound")
    return sign * d


def is_squarefree(n: int, limits: Limits = DEFAULT_LIMITS) -> bool:
    if n == 0:
        return False
    return squarefree_part(n, limits) == (-1 if n < 0 else 1) * abs(n)


def squarefree_range(lo: int, hi: int, limits: Limits = DEFAULT_LIMITS) -> list[int]:
    """Squarefree integers in [lo, hi], excluding 0."""
    return [d for d in range(lo, hi + 1) if d != 0 and is_squarefree(d, limits)]


def rationals_of_height(h: int) -> Iterator[Fraction]:
    """All a/b in lowest terms with max(|a|, b) == h, b >= 1.

    Ordered by numerator, then denominator; height 0 yields 0.
    """
    if h == 0:
        yield Fraction(0)
        return
    seen = []
    for a in range(-h, h + 1):
        if abs(a) == h:
            for b in range(1, h + 1):
                if gcd(a, b) == 1:
                    seen.append(Fraction(a, b))
        else:
            if gcd(a, h) == 1:
                seen.append(Fraction(a, h))
    for q in sorted(seen, key=lambda q: (q.numerator, q.denominator)):
        yield q


def rationals_by_height(bound: int) -> Iterator[Fraction]:
    """All rationals of height <= bound, in increasing height order."""
    for h in range(bound + 1):
        yield from rationals_of_height(h)


def rational_height(q: Fraction) -> int:
    return max(abs(q.numerator), q.denominator)
