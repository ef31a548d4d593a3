"""Generalized Fibonacci numbers ``F_0 = 0, F_1 = 1, F_{n+1} = alpha*F_n + F_{n-1}``.

Exact values are always Python integers. Real-valued helpers (the growth
constant and index bounds) go through :mod:`mpmath` and are only used for
inequalities, never to produce sequence members.
"""

import math
from bisect import bisect_right
from dataclasses import dataclass

import mpmath

from ._validation import check_alpha, check_int, check_natural

#: working precision (bits) for real-valued bounds
PHI_PRECISION = 192


def _fib_pair(alpha, n):
    # (F_n, F_{n+1}) for n >= 0 by fast doubling:
    #   F_{2m}   = F_m * (2*F_{m+1} - alpha*F_m)
    #   F_{2m+1} = F_{m+1}^2 + F_m^2
    a, b = 0, 1
    for bit in bin(n)[2:]:
        c = a * (2 * b - alpha * a)
        d = a * a + b * b
        if bit == "1":
            a, b = d, alpha * d + c
        else:
            a, b = c, d
    return a, b


def fib_at(alpha, n):
    """Return ``F_n`` for the sequence with parameter ``alpha`` (any integer ``n``).

    Uses fast doubling, so the cost is O(log|n|) big-integer multiplications.
    Negative indices follow ``F_{-n} = (-1)^(n+1) F_n``.

    >>> fib_at(3, 5)
    109
    >>> fib_at(3, -4)
    -33
    """
    alpha = check_alpha(alpha, minimum=1)
    n = check_int(n, "n")
    if n >= 0:
        return _fib_pair(alpha, n)[0]
    value = _fib_pair(alpha, -n)[0]
    return value if (-n) % 2 == 1 else -value


def fib_pair(alpha, n):
    """Return ``(F_n, F_{n+1})`` for ``n >= 0``."""
    alpha = check_alpha(alpha, minimum=1)
    n = check_natural(n, minimum=0)
    return _fib_pair(alpha, n)


def fib_range(alpha, stop):
    """List ``[F_0, F_1, ..., F_{stop-1}]`` by plain iteration."""
    alpha = check_alpha(alpha, minimum=1)
    stop = check_natural(stop, "stop", minimum=0)
    out = []
    a, b = 0, 1
    for _ in range(stop):
        out.append(a)
        a, b = b, alpha * b + a
    return out


@dataclass(frozen=True)
class FibTable:
    """Consecutive members ``F_1, F_2, ...`` up to and including the first one above a bound.

    ``values[i]`` holds ``F_{i+1}``. The last entry is the sentinel, the first
    value exceeding the bound the table was built for.
    """

    alpha: int
    values: tuple

    @property
    def entries(self):
        return [(i + 1, v) for i, v in enumerate(self.values)]

    @property
    def bound_index(self):
        """Index of the sentinel entry."""
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, index):
        # 1-based, matching the sequence index
        if index < 1 or index > len(self.values):
            raise IndexError(index)
        return self.values[index - 1]

    def covers(self, n):
        return self.values[-1] > n

    def ind(self, n):
        """Index ``k`` with ``F_k <= n < F_{k+1}``; requires ``covers(n)``."""
        if not self.covers(n):
            raise ValueError(f"table bound too small for {n}")
        return bisect_right(self.values, n)


def fib_table_upto(alpha, bound):
    """Build the :class:`FibTable` of every ``F_i <= bound`` plus one sentinel above it.

    >>> fib_table_upto(3, 360).values
    (1, 3, 10, 33, 109, 360, 1189)
    """
    alpha = check_alpha(alpha, minimum=1)
    bound = check_natural(bound, "bound")
    values = [1]
    a, b = 0, 1
    while b <= bound:
        a, b = b, alpha * b + a
        values.append(b)
    return FibTable(alpha, tuple(values))


def fib_table_count(alpha, count):
    """Table holding ``F_1 .. F_count`` (no bound semantics)."""
    alpha = check_alpha(alpha, minimum=1)
    count = check_natural(count, "count")
    return FibTable(alpha, tuple(fib_range(alpha, count + 1)[1:]))


def ind(alpha, n, table=None):
    """Return the index of the largest sequence member ``<= n``.

    When ``table`` covers ``n`` a binary search is used, otherwise the
    recurrence is iterated. ``alpha >= 3`` makes the index unique.

    >>> ind(3, 109), ind(3, 359)
    (5, 5)
    """
    alpha = check_alpha(alpha)
    n = check_natural(n)
    if table is not None and table.alpha == alpha and table.covers(n):
        return table.ind(n)
    k, a, b = 1, 1, alpha
    while b <= n:
        a, b = b, alpha * b + a
        k += 1
    return k


@dataclass(frozen=True)
class PhiAlpha:
    """High-precision approximation of the dominant root ``(alpha + sqrt(alpha^2+4)) / 2``.

    ``error`` bounds ``|value - phi|``.
    """

    alpha: int
    value: mpmath.mpf
    error: mpmath.mpf
    prec: int

    def interval(self):
        return self.value - self.error, self.value + self.error

    def log(self):
        with mpmath.workprec(self.prec):
            return mpmath.log(self.value)

    def residual(self):
        """``phi^2 - alpha*phi - 1`` evaluated at ``value`` (zero for the exact root)."""
        with mpmath.workprec(self.prec):
            return self.value * self.value - self.alpha * self.value - 1


def phi_alpha(alpha, prec=PHI_PRECISION):
    alpha = check_alpha(alpha, minimum=1)
    with mpmath.workprec(prec + 16):
        value = (alpha + mpmath.sqrt(alpha * alpha + 4)) / 2
    with mpmath.workprec(prec):
        value = +value
        error = abs(value) * mpmath.mpf(2) ** (2 - prec)
    return PhiAlpha(alpha, value, error, prec)


def _round_up(x):
    f = float(x)
    if mpmath.mpf(f) < x:
        f = math.nextafter(f, math.inf)
    return f


def ind_upper_bound(alpha, n):
    """Return ``log n / log phi_alpha + 2`` rounded up to the next float.

    The index of ``n`` is strictly below the returned value.
    """
    alpha = check_alpha(alpha)
    n = check_natural(n)
    phi = phi_alpha(alpha)
    with mpmath.workprec(phi.prec):
        # the lower end of phi's interval keeps the quotient an over-estimate
        bound = mpmath.log(n) / mpmath.log(phi.interval()[0]) + 2
        bound = bound * (1 + mpmath.mpf(2) ** (8 - phi.prec))
    return _round_up(bound)


def fib_closed_form(alpha, n, dps=None):
    """Evaluate ``(phi^n - (-phi)^(-n)) / sqrt(alpha^2 + 4)`` as an mpmath real."""
    alpha = check_alpha(alpha, minimum=1)
    n = check_int(n, "n")
    if dps is None:
        dps = 30 + int(abs(n) * math.log10(alpha + 1))
    with mpmath.workdps(dps):
        root = mpmath.sqrt(alpha * alpha + 4)
        phi = (alpha + root) / 2
        return (phi ** n - (-phi) ** (-n)) / root
