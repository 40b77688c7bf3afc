import pytest
from hypothesis import given, settings, strategies as st

from arithchern._rational import QQ
from arithchern.matseries import (
    SeriesMatrix,
    binomial_coefficient,
    binomial_power,
    binomial_power_series,
    constant_inverse,
    mat_inverse,
)
from arithchern.scalars import RationalRing
from arithchern.series import Series

R = RationalRing()


def test_binomial_coefficient():
    assert binomial_coefficient(QQ(1, 2), 3) == QQ(1, 16)
    assert binomial_coefficient(QQ(-1, 2), 2) == QQ(3, 8)
    assert binomial_coefficient(5, 2) == 10


def test_sqrt_series():
    t = Series.var(R, 1, 3, 0)
    r = binomial_power_series(t, QQ(1, 2))
    assert [r.coeff((j,)) for j in range(4)] == [1, QQ(1, 2), QQ(-1, 8), QQ(1, 16)]


def test_constant_inverse():
    inv = constant_inverse([[0, 1], [-1, 0]], R)
    assert inv == [[0, -1], [1, 0]]
    with pytest.raises(ZeroDivisionError):
        constant_inverse([[1, 2], [2, 4]], R)


def test_binomial_power_needs_small_argument():
    m = SeriesMatrix.identity(R, 2, 4, 2)
    with pytest.raises(ValueError):
        binomial_power(m, QQ(1, 2))


@pytest.mark.parametrize("n,order", [(1, 4), (2, 3), (3, 2)])
def test_square_of_matrix_sqrt(n, order):
    u = SeriesMatrix.generic(R, n, order)
    r = binomial_power(u, QQ(1, 2))
    assert r @ r == u.plus_identity()


@pytest.mark.parametrize("n,order", [(2, 3), (3, 2)])
def test_inverse_of_generic_matrix(n, order):
    x = SeriesMatrix.generic(R, n, order).plus_identity()
    one = SeriesMatrix.identity(R, n, n * n, order)
    assert x @ mat_inverse(x) == one
    assert mat_inverse(x) @ x == one


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_inverse_square_root_power(c):
    u = SeriesMatrix.generic(R, 2, 3).scale(1)
    u = SeriesMatrix([[u[i, j].scale(c[2 * i + j] or 1) for j in range(2)] for i in range(2)])
    r = binomial_power(u, QQ(-1, 2))
    assert r @ r @ u.plus_identity() == SeriesMatrix.identity(R, 2, 4, 3)
