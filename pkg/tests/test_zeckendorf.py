import pytest
from hypothesis import given, strategies as st

from fibchain.fib_core import fib_table_upto
from fibchain.sigma_ord import Scanner, sigma
from fibchain.zeckendorf import (
    InvalidRepresentationError, ZeckRep, zeck_decode, zeck_encode, zeck_validate,
)

from oracles import representations


def test_examples():
    assert str(zeck_encode(3, 1190)) == "1:1,7:1"
    assert zeck_encode(3, 12).digits == ((1, 2), (3, 1))
    assert zeck_decode(ZeckRep.parse(3, "1:2,3:1")) == 12
    assert ZeckRep.parse(3, str(zeck_encode(3, 999))) == zeck_encode(3, 999)


@pytest.mark.parametrize("text,condition", [
    ("1:3", "i"), ("2:4", "i"), ("2:0", "i"),
    ("3:1,2:1", "ii"), ("2:1,2:1", "ii"), ("0:1", "ii"),
    ("1:1,2:3", "iii"), ("2:2,3:3", "iii"),
])
def test_validate_reports_the_broken_rule(text, condition):
    v = zeck_validate(ZeckRep.parse(3, text))
    assert not v and v.condition == condition
    with pytest.raises(InvalidRepresentationError):
        zeck_decode(ZeckRep.parse(3, text))


def test_top_digit_alpha_is_fine_when_not_on_f1():
    assert zeck_validate(ZeckRep.parse(3, "2:3"))
    assert zeck_validate(ZeckRep.parse(3, "1:2,3:3"))


@pytest.mark.parametrize("alpha", [3, 4, 6])
def test_round_trip(alpha):
    table = fib_table_upto(alpha, 20000)
    for n in range(1, 20001):
        rep = zeck_encode(alpha, n, table)
        assert zeck_validate(rep)
        assert zeck_decode(rep) == n


@given(st.integers(3, 50), st.integers(1, 10 ** 40))
def test_round_trip_large(alpha, n):
    assert zeck_decode(zeck_encode(alpha, n)) == n


@pytest.mark.parametrize("alpha", [3, 4])
def test_every_n_has_exactly_one_representation(alpha):
    found = representations(alpha, 1500)
    assert all(found.get(n) == [zeck_encode(alpha, n).digits] for n in range(1, 1501))


@pytest.mark.parametrize("alpha", [3, 4, 5])
def test_sigma_divisors_form_a_representation(alpha):
    scanner = Scanner(alpha, 4000)
    for n in range(1, 2001):
        idx = scanner.divisor_indices(n)
        rep = ZeckRep(alpha, tuple((i, 1) for i in idx))
        assert zeck_validate(rep)
        assert zeck_encode(alpha, sigma(alpha, n)) == rep
