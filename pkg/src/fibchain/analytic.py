"""Multiplicative orders, the chain-density constant B_k and density predictions.

Products over primes are accumulated as sums of ``log1p`` terms and summed with
:func:`math.fsum`, which rounds the exact sum once. The result is therefore
independent of summation order (and of how the prime range is split), and
the only error left is the per-term ``log1p`` rounding.
"""

import math
import sys
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ._validation import (
    DomainError, PrecisionError, check_alpha, check_finite, check_kind, check_natural,
)
from .fib_core import fib_table_upto
from .primes import DEFAULT_CONFIG, factorint, prime_count, primes_upto

EULER_GAMMA = 0.57721566490153286061


def mult_order(p, base=2):
    """Least ``e >= 1`` with ``base**e == 1 (mod p)`` for an odd prime ``p``.

    Starts from ``p - 1`` and strips prime factors while the power stays 1.

    >>> mult_order(7), mult_order(11)
    (3, 10)
    """
    p = check_natural(p, "p", minimum=3)
    if base % p == 0:
        raise DomainError(f"{p} divides the base {base}")
    e = p - 1
    for q, mult in factorint(p - 1).items():
        for _ in range(mult):
            if pow(base, e // q, p) == 1:
                e //= q
            else:
                break
    return e


def w_of_p(p, k):
    """Number of residues killed by the first ``k`` chain polynomials modulo ``p``."""
    k = check_natural(k, "k")
    if p == 2:
        return 1
    return min(k, mult_order(p, 2))


def capped_orders(primes, k):
    """Vectorized ``min(k, ord(p; 2))`` for an array of odd primes."""
    primes = np.asarray(primes, dtype=np.int64)
    out = np.full(primes.shape, k, dtype=np.int64)
    r = np.ones(primes.shape, dtype=np.int64)
    open_ = np.ones(primes.shape, dtype=bool)
    for e in range(1, k):
        r = (2 * r) % primes
        hit = open_ & (r == 1)
        out[hit] = e
        open_ &= ~hit
    return out


def _log_terms(primes, k):
    w = capped_orders(primes, k).astype(np.float64)
    p = primes.astype(np.float64)
    return np.log1p(-w / p) - k * np.log1p(-1.0 / p)


@dataclass(frozen=True)
class BkEstimate:
    k: int
    cutoff_x: int
    value: float
    log_value: float
    delta: float  # |B_k(x) - B_k(x/2)|

    @property
    def log_ratio(self):
        return self.log_value / self.k


def bk_truncated(k, cutoff_x, primes=None):
    """``2^(k-1) * prod_{2 < p <= x} (1 - min(k, ord(p;2))/p) / (1 - 1/p)^k``.

    ``delta`` compares against the same product truncated at ``x / 2``.
    """
    k = check_natural(k, "k")
    cutoff_x = check_natural(cutoff_x, "cutoff_x", minimum=3)
    if primes is None:
        primes = primes_upto(cutoff_x)
    primes = primes[(primes > 2) & (primes <= cutoff_x)]
    terms = _log_terms(primes, k)
    half = int(np.searchsorted(primes, cutoff_x // 2, side="right"))
    head = (k - 1) * math.log(2)
    log_full = math.fsum([head, *terms.tolist()])
    log_half = math.fsum([head, *terms[:half].tolist()])
    value = check_finite(math.exp(log_full), f"B_{k}({cutoff_x})")
    return BkEstimate(k, cutoff_x, value, log_full, abs(value - math.exp(log_half)))


def density_integral(k, N, full_output=False):
    """``int_2^N dx / (log x * log 2x * ... * log 2^(k-1) x)`` by adaptive quadrature.

    Integrates in ``t = log x`` where the integrand is smooth and slowly
    varying. With ``full_output`` returns ``(value, abserr)``.
    """
    k = check_natural(k, "k")
    if N <= 2:
        return (0.0, 0.0) if full_output else 0.0
    shifts = np.arange(k) * math.log(2)

    def integrand(t):
        return math.exp(t) / float(np.prod(t + shifts))

    value, err = integrate.quad(integrand, math.log(2), math.log(N),
                                epsrel=1e-10, epsabs=0, limit=500)
    check_finite(value, "density integral")
    if err > 1e-6 * abs(value):
        raise PrecisionError(f"quadrature error estimate {err:.3g} too large for {value:.6g}")
    return (value, err) if full_output else value


@dataclass(frozen=True)
class DensityPrediction:
    k: int
    N: int
    kind: int
    starts_only: bool
    bk: float
    integral_value: float
    observed_count: int

    @property
    def predicted_count(self):
        return self.bk * self.integral_value

    @property
    def relative_error(self):
        return (self.observed_count - self.predicted_count) / self.predicted_count


def compare_density(k, N, kind=1, cfg=DEFAULT_CONFIG, *, cutoff_x=None, starts_only=False,
                    workers=1):
    """Observed number of primes ``p <= N`` with chain length ``>= k`` against the prediction."""
    from .chains import scan_chains

    k = check_natural(k, "k")
    N = check_natural(N, "N", minimum=100)
    kind = check_kind(kind)
    if cutoff_x is None:
        cutoff_x = max(N, 10 ** 6)
    if k == 1 and not starts_only:
        observed = prime_count(N)
    else:
        scan = scan_chains(N, kind, k, cfg, starts_only=starts_only, workers=workers)
        observed = scan.count_at_least(k)
    bk = bk_truncated(k, cutoff_x).value
    return DensityPrediction(k, N, kind, starts_only, bk, density_integral(k, N), observed)


def prop16_bracket(k, cutoff_x=10 ** 6, primes=None):
    """``(lower, log B_k(x) / k, upper)`` with the leading terms of the two bounds."""
    k = check_natural(k, "k", minimum=2)
    ratio = bk_truncated(k, cutoff_x, primes).log_ratio
    lower = math.log(math.log(k)) + EULER_GAMMA - 2
    upper = math.log(k) + EULER_GAMMA + math.log(math.log(2)) - 1
    return lower, ratio, upper


@dataclass(frozen=True)
class DirichletCheck:
    alpha: int
    s: float
    terms: int
    lhs: float
    rhs: float
    tail_bound: float

    @property
    def gap(self):
        return abs(self.lhs - self.rhs)

    @property
    def rounding(self):
        # both sides are fsum-accurate; the product and powers add a few ulps
        return 16 * sys.float_info.epsilon * abs(self.lhs)

    @property
    def within(self):
        return self.gap <= self.tail_bound + self.rounding


def dirichlet_check(alpha, s, terms):
    """Truncated check of ``zeta(s) * zeta_alpha(s - 1) = sum sigma(n) / n^s``.

    Both sides are cut at ``T = terms``. The left side keeps products
    ``m * F > T`` the right side drops, and those are bounded by
    ``(1 + 2/alpha) * sum_{n > T} n^(1-s) <= (1 + 2/alpha) T^(2-s) / (s - 2)``.
    """
    from .sigma_ord import sigma_range

    alpha = check_alpha(alpha)
    s = float(s)
    if s <= 2:
        raise DomainError("need s > 2")
    T = check_natural(terms, "terms", minimum=1000)
    n = np.arange(1, T + 1, dtype=np.float64)
    zeta_part = math.fsum((n ** -s).tolist())
    fibs = [f for f in fib_table_upto(alpha, T).values if f <= T]
    fib_part = math.fsum(float(f) ** (1 - s) for f in fibs)
    sig = sigma_range(alpha, T)[1:].astype(np.float64)
    rhs = math.fsum((sig * n ** -s).tolist())
    tail = (1 + 2 / alpha) * T ** (2 - s) / (s - 2)
    lhs = check_finite(zeta_part * fib_part, "truncated product")
    return DirichletCheck(alpha, s, T, lhs, check_finite(rhs, "truncated series"), tail)


def log_over_loglog(x):
    """``log x / log log x`` for comparison with the largest chain length below ``x``."""
    lx = math.log(x)
    return lx / math.log(lx)

