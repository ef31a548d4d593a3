"""Figure data for ``ord(F_n)`` and empirical running maxima.

The limsup quantities behind the conditional chain-length bounds cannot be
computed; the ``empirical_*`` helpers only report maxima over finite ranges.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._validation import DomainError, check_alpha, check_natural
from .primes import primes_upto
from .sigma_ord import Scanner, ord_of_fib, ord_range

INV_LOG2 = 1 / math.log(2)


def _orders_chunk(args):
    alpha, lo, hi, top = args
    scanner = Scanner.for_index(alpha, top)
    return [ord_of_fib(alpha, n, scanner).order for n in range(lo, hi)]


def fib_orders(alpha, n_max, n_min=2, workers=1):
    """``[ord(F_n) for n in n_min..n_max]``, optionally split across processes."""
    alpha = check_alpha(alpha)
    n_max = check_natural(n_max, "n_max", minimum=n_min)
    if workers <= 1:
        return _orders_chunk((alpha, n_min, n_max + 1, n_max))
    # interleave-free contiguous chunks, smaller near the top where traces cost more
    edges = np.unique(np.rint(n_min + (n_max + 1 - n_min)
                              * np.sqrt(np.linspace(0, 1, 4 * workers + 1))).astype(int))
    jobs = [(alpha, int(a), int(b), n_max) for a, b in zip(edges[:-1], edges[1:])]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_orders_chunk, jobs))
    return [v for part in parts for v in part]


FIGURE_HEADERS = {
    1: ("n", "ord", "bound"),
    2: ("n", "ratio", "limit"),
}


@dataclass(frozen=True)
class FigureData:
    which: int
    alpha: int
    rows: tuple
    violations: tuple       # n values breaking the row's inequality
    ratio_threshold: int | None = None  # figure 2: ratio < 1/log 2 for every n >= this

    @property
    def header(self):
        return FIGURE_HEADERS[self.which]


def figure_data(which, n_max, alpha=3, workers=1, orders=None):
    """Rows for figure 1 ``(n, ord(F_n), log2(n) + 2)`` or figure 2 ``(n, ord(F_n)/log(n+1), 1/log 2)``."""
    if which not in FIGURE_HEADERS:
        raise DomainError(f"figure must be 1 or 2, got {which}")
    alpha = check_alpha(alpha)
    n_max = check_natural(n_max, "n_max", minimum=2)
    if orders is None:
        orders = fib_orders(alpha, n_max, workers=workers)
    rows, bad = [], []
    for n, o in zip(range(2, n_max + 1), orders):
        if which == 1:
            bound = math.log2(n) + 2
            rows.append((n, o, bound))
            if o > bound:
                bad.append(n)
        else:
            ratio = o / math.log(n + 1)
            rows.append((n, ratio, INV_LOG2))
            if ratio >= INV_LOG2:
                bad.append(n)
    threshold = None
    if which == 2:
        threshold = (bad[-1] + 1) if bad else 2
    return FigureData(which, alpha, tuple(rows), tuple(bad), threshold)


@dataclass(frozen=True)
class RunningMax:
    label: str
    upto: int
    overall: float
    overall_at: int
    tail: float      # maximum over the upper half of the range
    tail_at: int


def empirical_c_alpha(alpha, p_max):
    """Running maxima of ``ord(F_p) / log p`` over primes ``p <= p_max`` (not a limsup)."""
    alpha = check_alpha(alpha)
    primes = [int(p) for p in primes_upto(p_max)]
    scanner = Scanner.for_index(alpha, p_max)
    ratios = [(ord_of_fib(alpha, p, scanner).order / math.log(p), p) for p in primes]
    best = max(ratios)
    tail = max(r for r in ratios if r[1] > p_max // 2)
    return RunningMax("C_alpha", p_max, best[0], best[1], tail[0], tail[1])


def empirical_d_alpha(alpha, n_max):
    """Running maxima of ``ord(n) / log log n`` over ``3 <= n <= n_max`` (not a limsup)."""
    alpha = check_alpha(alpha)
    n_max = check_natural(n_max, "n_max", minimum=6)
    orders = ord_range(alpha, n_max)
    n = np.arange(3, n_max + 1)
    ratio = orders[3:] / np.log(np.log(n))
    i = int(np.argmax(ratio))
    half = n > n_max // 2
    j = int(np.argmax(np.where(half, ratio, -np.inf)))
    return RunningMax("D_alpha", n_max, float(ratio[i]), int(n[i]), float(ratio[j]), int(n[j]))
