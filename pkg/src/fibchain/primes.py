"""Prime sieves, primality testing and integer factorization.

Composite verdicts from :func:`is_prime` are always certain. Below
``PrimalityConfig.threshold`` (2**64 by default) the prime verdict is certain
as well; above it the test is a Baillie-PSW style combination (strong
probable-prime tests plus a strong Lucas test), with the documented error
bound ``4**-rounds`` for the random-base part.
"""

import random
from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from ._validation import DomainError, check_int, check_natural

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                61, 67, 71, 73, 79, 83, 89, 97)

# Strong-probable-prime tests to these bases are deterministic for n < 3.3e24.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

MODES = ("probabilistic", "deterministic-small")


@dataclass(frozen=True)
class PrimalityConfig:
    """How :func:`is_prime` treats large inputs.

    ``mode="probabilistic"`` tests inputs above ``threshold`` with ``rounds``
    random bases plus a strong Lucas test; ``mode="deterministic-small"``
    refuses such inputs instead.
    """

    mode: str = "probabilistic"
    rounds: int = 40
    threshold: int = 2 ** 64
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"unknown primality mode {self.mode!r}")
        if self.mode == "probabilistic" and self.rounds < 40:
            raise DomainError("probabilistic mode needs rounds >= 40")
        if self.threshold > 2 ** 64:
            raise DomainError("deterministic threshold cannot exceed 2**64")

    @property
    def error_bound(self):
        """Upper bound on P(composite reported prime) for a single large input."""
        return 4.0 ** -self.rounds

    def is_certain(self, n):
        return n < self.threshold


DEFAULT_CONFIG = PrimalityConfig()


def _sprp(n, base, d, s):
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi(a, n):
    if n <= 0 or n % 2 == 0:
        raise DomainError("jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
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


def _strong_lucas(n):
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    if isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def half(x):
        x %= n
        return (x + n if x & 1 else x) // 2

    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V), half(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n, cfg=DEFAULT_CONFIG):
    """Primality test; see the module docstring for its guarantees.

    >>> is_prime(47), is_prime(95)
    (True, False)
    """
    n = check_int(n, "n")
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < cfg.threshold:
        return all(_sprp(n, b, d, s) for b in _DETERMINISTIC_BASES)
    if cfg.mode == "deterministic-small":
        raise DomainError(f"{n} exceeds the deterministic threshold {cfg.threshold}")
    if not _sprp(n, 2, d, s) or not _strong_lucas(n):
        return False
    rng = random.Random(f"{cfg.seed}:{n}")
    return all(_sprp(n, rng.randrange(2, n - 1), d, s) for _ in range(cfg.rounds))


def sieve_flags(limit):
    """Boolean array ``flags`` of length ``limit + 1`` with ``flags[i]`` true iff i is prime."""
    limit = check_natural(limit, "limit", minimum=0)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return flags


def primes_upto(limit):
    return np.flatnonzero(sieve_flags(limit))


def primes_in_range(lo, hi, base_primes=None):
    """Primes ``p`` with ``lo <= p < hi`` by a single sieve segment.

    ``base_primes`` must contain every prime up to ``isqrt(hi - 1)``.
    """
    lo, hi = max(int(lo), 2), int(hi)
    if hi <= lo:
        return np.empty(0, dtype=np.int64)
    if base_primes is None:
        base_primes = primes_upto(isqrt(hi - 1))
    flags = np.ones(hi - lo, dtype=bool)
    for p in base_primes:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        flags[start - lo::p] = False
    return np.flatnonzero(flags).astype(np.int64) + lo


def iter_prime_segments(lo, hi, segment=1 << 20):
    """Yield arrays of primes in ``[lo, hi)`` one segment at a time."""
    base = primes_upto(isqrt(max(hi - 1, 1)))
    for start in range(lo, hi, segment):
        yield primes_in_range(start, min(start + segment, hi), base)


def prime_count(limit):
    return int(np.count_nonzero(sieve_flags(limit)))


def _pollard_brent(n, seed=1):
    if n % 2 == 0:
        return 2
    rng = random.Random(seed)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorint(n):
    """Prime factorization ``{p: e}`` by trial division, then Pollard-Brent on the cofactor."""
    n = check_natural(n)
    factors = {}
    for p in SMALL_PRIMES:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 101
    while n > 1 and p * p <= n and p < 10_000:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        root = isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        d = _pollard_brent(m)
        stack += [d, m // d]
    return dict(sorted(factors.items()))


def divisors(n):
    """Sorted list of all positive divisors of ``n``."""
    out = [1]
    for p, e in factorint(n).items():
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)

