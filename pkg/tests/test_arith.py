from fractions import Fraction

import pytest

from galaudit.arith import (
    fraction_is_square,
    is_prime,
    is_prime_power,
    is_square,
    is_squarefree,
    prime_factors,
    primes_upto,
    rational_height,
    rationals_by_height,
    squarefree_part,
    squarefree_range,
    totient,
)
from galaudit.errors import FactorizationTooLarge


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}
    for n in range(-5, 42):
        assert is_prime(n) == (n in primes)


def test_is_prime_against_sieve():
    sieve = set(primes_upto(5000))
    for n in range(5000):
        assert is_prime(n) == (n in sieve)


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**67 - 1)  # classic composite Mersenne


def test_prime_factors():
    assert prime_factors(360) == {2: 3, 3: 2, 5: 1}
    assert prime_factors(1) == {}
    assert prime_factors(-12) == {2: 2, 3: 1}


def test_prime_power():
    assert is_prime_power(8) == (2, 3)
    assert is_prime_power(7) == (7, 1)
    assert is_prime_power(12) is None
    assert is_prime_power(1) is None


def test_totient():
    assert totient(8) == 4
    assert totient(9) == 6
    assert totient(1) == 1
    assert totient(36) == 12


@pytest.mark.parametrize(
    "value,expected",
    [(12, 3), (1, 1), (Fraction(9, 2), 2), (-18, -2), (4, 1), (Fraction(50, 27), 6)],
)
def test_squarefree_part(value, expected):
    assert squarefree_part(value) == expected


def test_squarefree_part_idempotent():
    for n in range(-50, 51):
        if n == 0:
            continue
        d = squarefree_part(n)
        assert squarefree_part(d) == d
        assert is_squarefree(d)


def test_squarefree_part_definition():
    # d * square = original, exactly
    for n in list(range(2, 200)) + [720, 10**6 + 4]:
        d = squarefree_part(n)
        assert n % d == 0 and is_square(n // d)


def test_squarefree_part_large_semiprime():
    p, q = 1_000_003, 1_000_033
    assert squarefree_part(p * q) == p * q
    assert squarefree_part(p * p * q) == q


def test_factorization_abort():
    p = 2**127 - 1  # prime, fine
    assert squarefree_part(p) == p
    with pytest.raises(FactorizationTooLarge):
        squarefree_part((2**89 - 1) * (2**107 - 1))  # semiprime beyond abort bound


def test_fraction_square():
    assert fraction_is_square(Fraction(9, 4))
    assert not fraction_is_square(Fraction(8, 4))
    assert not fraction_is_square(Fraction(-9, 4))


def test_rational_sweep_order_and_uniqueness():
    seen = list(rationals_by_height(6))
    assert len(seen) == len(set(seen))
    heights = [rational_height(q) for q in seen]
    assert heights == sorted(heights)
    assert Fraction(0) in seen and Fraction(-5, 6) in seen


def test_squarefree_range():
    assert squarefree_range(-5, 5) == [-5, -3, -2, -1, 1, 2, 3, 5]
