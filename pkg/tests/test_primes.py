import random

import numpy as np
import pytest

from fibchain import DomainError
from fibchain.primes import (
    PrimalityConfig, divisors, factorint, is_prime, iter_prime_segments, jacobi, prime_count,
    primes_in_range, primes_upto, sieve_flags,
)


def trial_division(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def test_is_prime_against_trial_division():
    flags = [is_prime(n) for n in range(20000)]
    assert flags == [trial_division(n) for n in range(20000)]


def test_sieve_matches_trial_division():
    primes = primes_upto(5000).tolist()
    assert primes == [n for n in range(5001) if trial_division(n)]
    flags = sieve_flags(100)
    assert np.flatnonzero(flags).tolist() == [p for p in primes if p <= 100]


def test_segments_agree_with_the_full_sieve():
    full = primes_upto(300000)
    pieces = np.concatenate([seg for seg in iter_prime_segments(2, 300001, segment=12345)])
    assert np.array_equal(full, pieces)
    assert np.array_equal(primes_in_range(1000, 2000), full[(full >= 1000) & (full < 2000)])


def test_prime_counts():
    assert prime_count(10 ** 6) == 78498
    assert prime_count(100) == 25


@pytest.mark.parametrize("n", [
    2 ** 61 - 1, 2 ** 89 - 1, 2 ** 127 - 1, 10 ** 18 + 9, 2759832934171386593519,
])
def test_known_primes(n):
    assert is_prime(n)


@pytest.mark.parametrize("n", [
    # strong pseudoprimes to several bases, Carmichael numbers and semiprimes
    3215031751, 3825123056546413051, 318665857834031151167461, 561, 41041,
    (2 ** 61 - 1) * (2 ** 31 - 1), 2759832934171386593519 * 3,
])
def test_known_composites(n):
    assert not is_prime(n)


def test_deterministic_mode_refuses_large_inputs():
    cfg = PrimalityConfig(mode="deterministic-small")
    assert is_prime(2 ** 61 - 1, cfg)
    with pytest.raises(DomainError):
        is_prime(2 ** 89 - 1, cfg)


def test_config_guards():
    with pytest.raises(DomainError):
        PrimalityConfig(rounds=10)
    cfg = PrimalityConfig()
    assert cfg.error_bound <= 4.0 ** -40
    assert cfg.is_certain(2 ** 63) and not cfg.is_certain(2 ** 64)


def test_jacobi_against_euler_criterion():
    for p in (3, 5, 7, 11, 101):
        for a in range(p):
            e = pow(a, (p - 1) // 2, p)
            assert jacobi(a, p) == (e if e <= 1 else -1)


def test_factorint_and_divisors():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randrange(2, 10 ** 12)
        f = factorint(n)
        prod = 1
        for p, e in f.items():
            assert is_prime(p)
            prod *= p ** e
        assert prod == n
    n = (2 ** 31 - 1) * (2 ** 61 - 1)
    assert factorint(n) == {2 ** 31 - 1: 1, 2 ** 61 - 1: 1}
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
