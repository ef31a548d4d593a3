import pytest

from fibchain import DomainError
from fibchain.analytic import mult_order
from fibchain.chains import (
    chain, check_record, is_chain_start, predecessor, scan_chains, split_range, verify_cor34,
    verify_remark15,
)
from fibchain.primes import is_prime, primes_upto


def test_seed_two():
    a = chain(2, 1)
    assert a.elements == (2, 5, 11, 23, 47) and a.breaker == 95 and a.length == 5
    b = chain(2, -1)
    assert b.elements == (2, 3, 5) and b.breaker == 9 and b.length == 3


def test_record_chains():
    first = chain(2759832934171386593519, 1)
    second = chain(42008163485623434922152331, -1)
    assert first.length == 17 and second.length == 19
    assert not first.certain and check_record(first) and check_record(second)


def test_non_prime_seed():
    with pytest.raises(DomainError):
        chain(9)
    with pytest.raises(DomainError):
        chain(3, 2)


def test_predecessor_and_starts():
    assert predecessor(11, 1) == 5 and predecessor(10, 1) is None
    assert is_chain_start(2, 1) and not is_chain_start(5, 1) and is_chain_start(89, 1)


def brute_lengths(limit, kind):
    out = {}
    for p in range(2, limit + 1):
        if is_prime(p):
            n, x = 0, p
            while is_prime(x):
                n += 1
                x = 2 * x + kind
            out[p] = n
    return out


@pytest.mark.parametrize("kind", [1, -1])
def test_scan_matches_brute_force(kind):
    res = scan_chains(30000, kind)
    brute = brute_lengths(30000, kind)
    assert {r.seed: r.length for r in res.records} == brute
    assert sum(res.length_counts.values()) == len(brute)


def test_scan_small_example():
    res = scan_chains(100, 1, 4)
    assert [(r.seed, r.length) for r in res.records] == [(2, 5), (5, 4), (89, 6)]
    starts = scan_chains(100, 1, 4, starts_only=True)
    assert [(r.seed, r.length) for r in starts.records] == [(2, 5), (89, 6)]
    assert res.k_max == 6


@pytest.mark.parametrize("segments,workers", [(1, 1), (7, 1), (13, 1), (4, 2)])
def test_scan_is_independent_of_partitioning(segments, workers):
    ref = scan_chains(200000, -1, 3)
    got = scan_chains(200000, -1, 3, segments=segments, workers=workers)
    assert got.records == ref.records and got.length_counts == ref.length_counts


def test_split_range_covers_exactly():
    parts = split_range(2, 1001, 7)
    assert parts[0][0] == 2 and parts[-1][1] == 1001
    assert all(a[1] == b[0] for a, b in zip(parts, parts[1:]))


def test_length_bounded_by_order_of_two():
    for p in primes_upto(2000)[1:].tolist():
        for kind in (1, -1):
            assert chain(p, kind).length <= mult_order(p, 2)


def test_half_p_bound():
    assert verify_remark15(10000)


def test_chain_order_identity_examples():
    c = verify_cor34(3, 3, 1)
    assert c.record.length == 2 and (c.ord_seed, c.ord_last) == (2, 3) and c
    c = verify_cor34(3, 5, -1)
    assert c.record.length == 1 and c.ord_seed == c.ord_last == 3 and c
    c = verify_cor34(3, 89, 1)
    assert c.record.length == 6 and (c.ord_seed, c.ord_last) == (5, 10) and c
