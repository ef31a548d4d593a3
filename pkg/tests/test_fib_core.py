import math
from math import gcd

import mpmath
import pytest
from hypothesis import given, strategies as st

from fibchain import AlphaError, DomainError
from fibchain.fib_core import (
    fib_at, fib_closed_form, fib_pair, fib_range, fib_table_count, fib_table_upto, ind,
    ind_upper_bound, phi_alpha,
)

alphas = st.integers(min_value=3, max_value=40)


def naive(alpha, n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, alpha * b + a
    return a


def test_example_sequence_alpha3():
    assert fib_range(3, 8) == [0, 1, 3, 10, 33, 109, 360, 1189]


def test_negative_indices():
    assert [fib_at(3, -n) for n in range(1, 5)] == [1, -3, 10, -33]


@given(alphas, st.integers(min_value=0, max_value=600))
def test_fast_doubling_matches_iteration(alpha, n):
    assert fib_at(alpha, n) == naive(alpha, n)
    assert fib_pair(alpha, n) == (naive(alpha, n), naive(alpha, n + 1))


@given(alphas, st.integers(min_value=-300, max_value=300), st.integers(min_value=-300, max_value=300))
def test_addition_law(alpha, m, n):
    assert fib_at(alpha, m + n) == fib_at(alpha, m + 1) * fib_at(alpha, n) + fib_at(alpha, m) * fib_at(alpha, n - 1)


@pytest.mark.parametrize("alpha", [3, 4, 7])
def test_closed_form_rounds_to_the_integer(alpha):
    for n in range(0, 150):
        dps = 30 + 2 * n
        with mpmath.workdps(dps):
            value = fib_closed_form(alpha, n, dps)
            assert abs(value - fib_at(alpha, n)) < mpmath.mpf(10) ** -20


@pytest.mark.parametrize("alpha", [3, 5])
def test_partial_sums(alpha):
    total = 0
    for n in range(1, 200):
        total += fib_at(alpha, n)
        assert alpha * total == (alpha + 1) * fib_at(alpha, n) + fib_at(alpha, n - 1) - 1


@pytest.mark.parametrize("alpha", [3, 4])
def test_divisibility_and_gcd(alpha):
    F = fib_range(alpha, 121)
    for m in range(1, 121):
        for n in range(1, 121):
            assert (F[n] % F[m] == 0) == (n % m == 0)
            assert gcd(F[m], F[n]) == F[gcd(m, n)]


def test_table_and_ind():
    table = fib_table_upto(3, 360)
    assert table.values == (1, 3, 10, 33, 109, 360, 1189)
    assert table[5] == 109 and table.bound_index == 7
    assert [table.ind(n) for n in (1, 2, 3, 9, 10, 1188)] == [1, 1, 2, 2, 3, 6]
    assert fib_table_count(3, 4).values == (1, 3, 10, 33)
    with pytest.raises(ValueError):
        table.ind(1189)


@given(alphas, st.integers(min_value=1, max_value=10 ** 30))
def test_ind_brackets_n(alpha, n):
    k = ind(alpha, n)
    assert fib_at(alpha, k) <= n < fib_at(alpha, k + 1)
    assert ind(alpha, n, fib_table_upto(alpha, n)) == k
    assert k < ind_upper_bound(alpha, n)


def test_ind_one_million():
    # F_12 = 467280 <= 10**6 < F_13 = 1543969
    assert fib_at(3, 12) == 467280
    assert ind(3, 10 ** 6) == 12
    assert ind_upper_bound(3, 10 ** 6) == pytest.approx(13.5634, abs=1e-4)


def test_ind_upper_bound_is_above_the_real_value():
    for alpha, n in [(3, 10 ** 6), (55, 2), (4, 12345)]:
        exact = mpmath.log(n) / mpmath.log(phi_alpha(alpha, 400).value) + 2
        assert ind_upper_bound(alpha, n) >= exact


def test_phi():
    phi = phi_alpha(3)
    lo, hi = phi.interval()
    assert lo < (3 + math.sqrt(13)) / 2 < hi or abs(float(phi.value) - (3 + math.sqrt(13)) / 2) < 1e-15
    assert abs(phi.residual()) < 1e-50


def test_validation():
    with pytest.raises(AlphaError):
        ind(2, 10)
    with pytest.raises(DomainError):
        ind(3, 0)
    with pytest.raises(TypeError):
        fib_at(3, 2.0)
    with pytest.raises(TypeError):
        fib_at(True, 2)
