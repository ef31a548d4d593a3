"""The divisor function over sequence members, its iteration, and ``ord``.

``sigma(n)`` sums the sequence members ``d`` (with ``d >= 1``) that divide ``n``;
``ord(n)`` is the number of applications of ``sigma`` needed to reach 1.
All scans are exact integer arithmetic. The closed forms (``sum_identity``,
``sigma_wing``, ``sigma_shifted``) are exposed separately so they can be
compared against the direct scans.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import mpmath
import numpy as np

from . import _bigint
from ._validation import DomainError, check_alpha, check_int, check_natural
from .fib_core import fib_at, fib_table_count, fib_table_upto, phi_alpha
from .primes import divisors, is_prime


@dataclass(frozen=True)
class DivisorSet:
    alpha: int
    n: int
    indices: tuple  # sequence indices of the divisors, ascending
    divisors: tuple

    def __iter__(self):
        return iter(self.divisors)

    def __len__(self):
        return len(self.divisors)

    @property
    def max_index(self):
        return self.indices[-1]


@dataclass(frozen=True)
class SigmaTrace:
    """Iterates ``n, sigma(n), sigma^2(n), ..., 1``."""

    alpha: int
    start: int
    iterates: tuple
    start_index: int | None = field(default=None, compare=False)

    @property
    def order(self):
        return len(self.iterates) - 1

    def __len__(self):
        return len(self.iterates)


class Scanner:
    """Shared, read-only divisor scanner over ``F_1 .. F_K``.

    Build one per trace (or per batch of traces) so the table and its GMP
    conversion are paid once. Inputs must be below the table's sentinel.
    """

    def __init__(self, alpha, bound=None, table=None):
        self.alpha = check_alpha(alpha)
        if table is None:
            table = fib_table_upto(self.alpha, max(int(bound), 1))
        self.table = table
        self._values = tuple(_bigint.big(v) for v in table.values)

    @classmethod
    def for_index(cls, alpha, index):
        """Scanner able to handle anything below ``F_{index+1}``."""
        return cls(alpha, table=fib_table_count(alpha, index + 1))

    def covers(self, n):
        return self.table.covers(n)

    def divisor_indices(self, n):
        k = self.table.ind(n)
        big_n = _bigint.big(n)
        values = self._values
        return [i + 1 for i in range(k) if _bigint.divides(values[i], big_n)]

    def divisor_set(self, n):
        idx = self.divisor_indices(n)
        return DivisorSet(self.alpha, n, tuple(idx), tuple(self.table[i] for i in idx))

    def sigma(self, n):
        k = self.table.ind(n)
        big_n = _bigint.big(n)
        values = self._values
        total = 0
        for i in range(k):
            if _bigint.divides(values[i], big_n):
                total += values[i]
        return int(total)

    def trace_from(self, iterates):
        n = iterates[-1]
        while n != 1:
            n = self.sigma(n)
            iterates.append(n)
        return iterates


def divisor_set(alpha, n):
    """Sequence members dividing ``n``.

    >>> divisor_set(3, 110).divisors
    (1, 10)
    """
    alpha = check_alpha(alpha)
    n = check_natural(n)
    return Scanner(alpha, n).divisor_set(n)


def sigma(alpha, n):
    """Sum of the sequence members dividing ``n``.

    >>> [sigma(3, n) for n in (2, 3, 4, 109)]
    [1, 4, 1, 110]
    """
    alpha = check_alpha(alpha)
    n = check_natural(n)
    return Scanner(alpha, n).sigma(n)


def sigma_of_fib(alpha, m):
    """``sigma(F_m)`` computed as ``sum(F_d for d | m)``."""
    alpha = check_alpha(alpha)
    m = check_natural(m, "m")
    return sum(fib_at(alpha, d) for d in divisors(m))


def sigma_iterate(alpha, n, k):
    alpha = check_alpha(alpha)
    n = check_natural(n)
    k = check_natural(k, "k", minimum=0)
    if k == 0:
        return n
    scanner = Scanner(alpha, n)
    for _ in range(k):
        if n == 1:
            break
        n = scanner.sigma(n)
    return n


def ord_trace(alpha, n, scanner=None):
    """Full trace ``n -> sigma(n) -> ... -> 1``.

    ``sigma(n) < 2n`` and later iterates shrink, so one table sized for
    ``2n`` serves the whole trace.

    >>> ord_trace(3, 109).iterates
    (109, 110, 11, 1)
    """
    alpha = check_alpha(alpha)
    n = check_natural(n)
    if scanner is None or not scanner.covers(2 * n):
        scanner = Scanner(alpha, 2 * n)
    return SigmaTrace(alpha, n, tuple(scanner.trace_from([n])))


def order(alpha, n):
    """``ord_alpha(n)`` as an integer."""
    return ord_trace(alpha, n).order


def ord_of_fib(alpha, m, scanner=None):
    """Trace starting at ``F_m``; the first step uses the index divisors of ``m``."""
    alpha = check_alpha(alpha)
    m = check_natural(m, "m")
    start = fib_at(alpha, m)
    if m == 1:
        return SigmaTrace(alpha, 1, (1,), start_index=1)
    first = sigma_of_fib(alpha, m)
    if scanner is None or not scanner.covers(first):
        scanner = Scanner.for_index(alpha, m)
    return SigmaTrace(alpha, start, tuple(scanner.trace_from([start, first])), start_index=m)


# -- closed forms ---------------------------------------------------------


def sum_identity(alpha, m, n):
    """``F_{m+n} + F_{m-n}`` via its factored form.

    Odd ``n`` gives ``F_n (F_{m+1} + F_{m-1})``; even ``n`` gives
    ``F_m (F_{n-1} + F_{n+1})``.
    """
    alpha = check_alpha(alpha, minimum=1)
    m, n = check_int(m, "m"), check_natural(n)
    if m < n:
        raise DomainError("sum_identity needs m >= n >= 1")
    if n % 2:
        return fib_at(alpha, n) * (fib_at(alpha, m + 1) + fib_at(alpha, m - 1))
    return fib_at(alpha, m) * (fib_at(alpha, n - 1) + fib_at(alpha, n + 1))


def wing_value(alpha, m):
    """``F_{m+1} + F_{m-1}`` (which equals ``F_{2m} / F_m``)."""
    return fib_at(alpha, m + 1) + fib_at(alpha, m - 1)


def sigma_wing(alpha, m):
    """Closed form of ``sigma(F_{m+1} + F_{m-1})``: 1 for even ``m``, ``alpha + 1`` for odd."""
    alpha = check_alpha(alpha)
    m = check_natural(m, "m")
    return 1 if m % 2 == 0 else alpha + 1


def shifted_value(alpha, p, m):
    """``F_{m+p} + F_{m-p}``; the second index may be negative."""
    return fib_at(alpha, m + p) + fib_at(alpha, m - p)


def sigma_shifted(alpha, p, m):
    """Closed form of ``sigma(F_{m+p} + F_{m-p})`` for prime ``p`` and ``p != m < 2p``."""
    alpha = check_alpha(alpha)
    p, m = check_natural(p, "p", minimum=2), check_natural(m, "m")
    if not is_prime(p):
        raise DomainError(f"p must be prime, got {p}")
    if m == p or m >= 2 * p:
        raise DomainError(f"need m != p and m < 2p, got p={p}, m={m}")
    if p == 2:
        return 1 if m == 1 else fib_at(alpha, 3) + 1
    return fib_at(alpha, p) + (1 if m % 2 == 0 else alpha + 1)


class EquivalenceFlags(NamedTuple):
    arithmetic: bool   # p == 2q + 1 or p == 2q - 1
    some_alpha: bool   # sigma^2(F_p) == sigma(F_q) for at least one tested alpha
    all_alpha: bool    # ... for every tested alpha

    @property
    def agree(self):
        return self.arithmetic == self.some_alpha == self.all_alpha


def verify_thm35(alpha_set, p, q):
    """Compare the arithmetic relation between odd primes ``p, q`` with the iterate identity."""
    p, q = check_natural(p, "p", 3), check_natural(q, "q", 3)
    if not (is_prime(p) and is_prime(q)):
        raise DomainError("p and q must be odd primes")
    hits = []
    for alpha in alpha_set:
        alpha = check_alpha(alpha)
        left = sigma(alpha, sigma_of_fib(alpha, p))
        hits.append(left == sigma_of_fib(alpha, q))
    return EquivalenceFlags(p in (2 * q + 1, 2 * q - 1), any(hits), all(hits))


# -- range computations ---------------------------------------------------


def sigma_range(alpha, limit):
    """``out[n] = sigma(n)`` for ``0 <= n <= limit`` (``out[0] = 0``), as int64."""
    alpha = check_alpha(alpha)
    limit = check_natural(limit, "limit")
    out = np.zeros(limit + 1, dtype=np.int64)
    for f in fib_table_upto(alpha, limit).values[:-1]:
        out[f::f] += f
    return out


def max_divisor_index_range(alpha, limit):
    """``out[n]`` is the largest ``i`` with ``F_i | n`` (0 for ``n = 0``)."""
    alpha = check_alpha(alpha)
    out = np.zeros(limit + 1, dtype=np.int64)
    for i, f in enumerate(fib_table_upto(alpha, limit).values[:-1], start=1):
        out[f::f] = i
    return out


def ind_range(alpha, values):
    """Vectorized ``ind`` for an int array of positive values."""
    values = np.asarray(values, dtype=np.int64)
    fibs = np.array(fib_table_upto(alpha, int(values.max())).values, dtype=np.int64)
    return np.searchsorted(fibs, values, side="right")


def ord_range(alpha, limit):
    """``out[n] = ord(n)`` for ``1 <= n <= limit`` (``out[0]`` is unused)."""
    alpha = check_alpha(alpha)
    limit = check_natural(limit, "limit")
    sig = sigma_range(alpha, 2 * limit)
    cur = np.arange(limit + 1, dtype=np.int64)
    cur[0] = 1
    steps = np.zeros(limit + 1, dtype=np.int64)
    live = cur != 1
    while live.any():
        cur[live] = sig[cur[live]]
        steps[live] += 1
        live = cur != 1
    return steps


# -- sharp-threshold diagnostics -------------------------------------------


def log_threshold(alpha, y, dps=40):
    """``log A_alpha(y) = log(sqrt(alpha^2+4) + 1/phi) / (y log phi - 1)``; None if undefined."""
    alpha = check_alpha(alpha)
    with mpmath.workdps(dps):
        phi = (alpha + mpmath.sqrt(alpha * alpha + 4)) / 2
        denom = mpmath.mpf(y) * mpmath.log(phi) - 1
        if denom <= 0:
            return None
        return mpmath.log(mpmath.sqrt(alpha * alpha + 4) + 1 / phi) / denom


def crossover_alpha(y=0.25, start=55, stop=100_000):
    """Smallest ``alpha >= start`` with ``alpha > A_alpha(y)``."""
    for alpha in range(start, stop):
        value = log_threshold(alpha, y)
        if value is not None and math.log(alpha) > value:
            return alpha
    return None


def ind_log_bound(alpha, n):
    """``log n / log phi_alpha + 2`` as a float (no outward rounding)."""
    return math.log(n) / float(phi_alpha(alpha).log()) + 2
