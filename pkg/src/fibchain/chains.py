"""Cunningham chains of the first (``p -> 2p+1``) and second (``p -> 2p-1``) kind.

Every prime is treated as a seed, including primes sitting inside a longer
chain; ``starts_only`` filters to seeds with no prime predecessor.
"""

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import isqrt

import numpy as np

from ._validation import DomainError, check_alpha, check_kind, check_natural
from .primes import DEFAULT_CONFIG, is_prime, primes_in_range, primes_upto, sieve_flags
from .sigma_ord import Scanner, ord_of_fib


@dataclass(frozen=True)
class ChainRecord:
    kind: int
    seed: int
    elements: tuple
    breaker: int
    certain: bool = True  # False if any prime verdict was probabilistic

    @property
    def length(self):
        return len(self.elements)

    @property
    def last(self):
        return self.elements[-1]


def successor(x, kind):
    return 2 * x + kind


def predecessor(x, kind):
    """The element that would precede ``x`` in a chain, or None if not an integer."""
    y = x - kind
    return y // 2 if y % 2 == 0 else None


def chain(seed, kind=1, cfg=DEFAULT_CONFIG):
    """Follow ``x -> 2x + kind`` from ``seed`` until the first composite.

    >>> chain(2, 1).elements, chain(2, 1).breaker
    ((2, 5, 11, 23, 47), 95)
    """
    seed = check_natural(seed, "seed", minimum=2)
    kind = check_kind(kind)
    if not is_prime(seed, cfg):
        raise DomainError(f"seed {seed} is not prime")
    elements = [seed]
    x = successor(seed, kind)
    while is_prime(x, cfg):
        elements.append(x)
        x = successor(x, kind)
    certain = cfg.is_certain(elements[-1])
    return ChainRecord(kind, seed, tuple(elements), x, certain)


def chain_length(seed, kind=1, cfg=DEFAULT_CONFIG):
    return chain(seed, kind, cfg).length


def is_chain_start(p, kind, cfg=DEFAULT_CONFIG):
    prev = predecessor(p, kind)
    return prev is None or not is_prime(prev, cfg)


@dataclass(frozen=True)
class ScanResult:
    limit: int
    kind: int
    min_len: int
    starts_only: bool
    records: tuple          # ChainRecords with length >= min_len, ascending seed
    length_counts: dict     # length -> number of seeds with exactly that length

    @property
    def k_max(self):
        """Largest chain length over all scanned seeds (``k(N)``)."""
        return max(self.length_counts, default=0)

    def count_at_least(self, k):
        return sum(c for length, c in self.length_counts.items() if length >= k)


def _segment_lengths(lo, hi, kind, cfg):
    """Chain lengths for every prime seed in ``[lo, hi)`` as (seeds, lengths)."""
    seeds = primes_in_range(lo, hi, primes_upto(isqrt(max(hi - 1, 1))))
    if seeds.size == 0:
        return seeds, seeds.copy()
    lengths = np.ones(seeds.size, dtype=np.int64)
    # first successors live in one window, so sieve it
    nxt = 2 * seeds + kind
    w_lo, w_hi = int(nxt[0]), int(nxt[-1]) + 1
    window = np.zeros(w_hi - w_lo, dtype=bool)
    window[primes_in_range(w_lo, w_hi) - w_lo] = True
    alive = window[nxt - w_lo]
    lengths[alive] += 1
    for i in np.flatnonzero(alive):
        x = successor(int(nxt[i]), kind)
        while is_prime(x, cfg):
            lengths[i] += 1
            x = successor(x, kind)
    return seeds, lengths


def _record(seed, length, kind, cfg):
    elements = [seed]
    for _ in range(length - 1):
        elements.append(successor(elements[-1], kind))
    return ChainRecord(kind, seed, tuple(elements), successor(elements[-1], kind),
                       cfg.is_certain(elements[-1]))


def _scan_worker(args):
    lo, hi, kind, cfg = args
    seeds, lengths = _segment_lengths(lo, hi, kind, cfg)
    return seeds.tolist(), lengths.tolist()


def split_range(lo, hi, parts):
    parts = max(1, int(parts))
    step = -(-(hi - lo) // parts)
    return [(a, min(a + step, hi)) for a in range(lo, hi, step)]


def scan_chains(limit, kind=1, min_len=1, cfg=DEFAULT_CONFIG, *, starts_only=False,
                workers=1, segments=None):
    """Chain lengths for every prime seed ``p <= limit``.

    The seed range is cut into independent segments; with ``workers > 1``
    they run in a process pool. Results are merged in seed order, so the
    output does not depend on ``workers`` or ``segments``.
    """
    limit = check_natural(limit, "limit", minimum=2)
    kind = check_kind(kind)
    min_len = check_natural(min_len, "min_len")
    if segments is None:
        segments = max(workers, -(-limit // (1 << 22)))
    jobs = [(a, b, kind, cfg) for a, b in split_range(2, limit + 1, segments)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_worker, jobs))
    else:
        parts = [_scan_worker(job) for job in jobs]

    seeds = [s for part in parts for s in part[0]]
    lengths = [n for part in parts for n in part[1]]
    if starts_only:
        flags = sieve_flags(limit)
        keep = []
        for s, n in zip(seeds, lengths):
            prev = predecessor(s, kind)
            if prev is None or prev < 2 or not flags[prev]:
                keep.append((s, n))
        seeds = [s for s, _ in keep]
        lengths = [n for _, n in keep]
    counts = Counter(lengths)
    records = tuple(_record(s, n, kind, cfg) for s, n in zip(seeds, lengths) if n >= min_len)
    return ScanResult(limit, kind, min_len, starts_only, records, dict(sorted(counts.items())))


def verify_remark15(limit, cfg=DEFAULT_CONFIG):
    """True iff both chain lengths stay below ``p / 2`` for every prime ``7 <= p <= limit``."""
    limit = check_natural(limit, "limit", minimum=7)
    for kind in (1, -1):
        seeds, lengths = _segment_lengths(7, limit + 1, kind, cfg)
        if np.any(2 * lengths >= seeds):
            return False
    return True


@dataclass(frozen=True)
class ChainOrderCheck:
    alpha: int
    record: ChainRecord
    ord_seed: int
    ord_last: int
    one_step: bool    # sigma(F_{2p+-1} + 1) == F_p + 1
    certain: bool

    @property
    def holds(self):
        return self.one_step and self.ord_last - self.ord_seed == self.record.length - 1

    def __bool__(self):
        return self.holds


def verify_cor34(alpha, p, kind=1, cfg=DEFAULT_CONFIG):
    """Check that ``ord(F_last) - ord(F_p)`` equals the chain length minus one.

    Also checks the one-step identity ``sigma(F_{2p+kind} + 1) = F_p + 1``
    (it holds for every odd prime ``p``, whether or not ``2p + kind`` is prime).
    """
    alpha = check_alpha(alpha)
    p = check_natural(p, "p", minimum=3)
    rec = chain(p, kind, cfg)
    step = successor(p, kind)
    scanner = Scanner.for_index(alpha, max(rec.last, step))
    ord_seed = ord_of_fib(alpha, p, scanner).order
    ord_last = ord_of_fib(alpha, rec.last, scanner).order
    f_p = scanner.table[p]
    one_step = scanner.sigma(scanner.table[step] + 1) == f_p + 1
    return ChainOrderCheck(alpha, rec, ord_seed, ord_last, one_step, rec.certain)


def check_record(rec, cfg=DEFAULT_CONFIG):
    """Re-verify a record's invariants: prime elements, doubling rule, composite breaker."""
    ok = all(is_prime(x, cfg) for x in rec.elements)
    ok &= all(b == successor(a, rec.kind) for a, b in zip(rec.elements, rec.elements[1:]))
    ok &= rec.breaker == successor(rec.last, rec.kind) and not is_prime(rec.breaker, cfg)
    return bool(ok)

