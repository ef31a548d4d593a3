import math

import pytest

from fibchain import DomainError
from fibchain.figures import empirical_c_alpha, empirical_d_alpha, fib_orders, figure_data
from fibchain.sigma_ord import ord_of_fib


def test_fib_orders_match_direct_traces():
    orders = fib_orders(3, 300)
    assert orders == [ord_of_fib(3, n).order for n in range(2, 301)]
    assert orders[0] == 2  # F_2 = 3 -> 4 -> 1


def test_parallel_orders_match():
    assert fib_orders(3, 400, workers=2) == fib_orders(3, 400)


def test_figure_rows():
    f1 = figure_data(1, 400)
    assert f1.header == ("n", "ord", "bound") and not f1.violations
    assert len(f1.rows) == 399
    n, o, bound = f1.rows[109 - 2]
    assert n == 109 and o <= bound and bound == pytest.approx(math.log2(109) + 2)
    f2 = figure_data(2, 400, orders=[r[1] for r in f1.rows])
    assert f2.rows[0][1] == pytest.approx(2 / math.log(3))
    assert f2.violations[:3] == (2, 3, 5)
    assert all(r[1] < 1 / math.log(2) for r in f2.rows if r[0] >= f2.ratio_threshold)


def test_smallest_figure():
    assert figure_data(1, 2).rows == ((2, 2, 3.0),)
    with pytest.raises(DomainError):
        figure_data(3, 10)


def test_running_maxima():
    c = empirical_c_alpha(3, 500)
    assert c.overall_at == 2 and c.overall >= c.tail
    d = empirical_d_alpha(3, 10000)
    assert d.tail_at > 5000 and d.overall >= d.tail
