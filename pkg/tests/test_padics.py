import pytest
from hypothesis import given, settings, strategies as st

from arithchern.padics import (
    PadicField,
    PadicScalar,
    PrecisionError,
    padic_fermat_quotient,
    padic_inv,
    padic_sqrt_branch,
)

P = st.sampled_from([3, 5, 7])


def test_from_rational_and_residue():
    x = PadicScalar.from_rational("1/2", 3, 4)
    assert (x * 2).residue() == 1
    assert PadicScalar.from_rational(18, 3, 5).val == 2


def test_negative_valuation_residue_rejected():
    with pytest.raises(ValueError):
        PadicScalar.from_rational("1/3", 3, 4).residue()


def test_sqrt_branch_is_one_mod_p():
    a = PadicScalar.from_rational(7, 3, 6)
    r = padic_sqrt_branch(a)
    assert r * r == a
    assert r.residue() % 3 == 1


def test_sqrt_branch_rejects_non_unit():
    with pytest.raises(ValueError):
        padic_sqrt_branch(PadicScalar.from_rational(2, 3, 5))


def test_fermat_quotient_loses_one_digit():
    d = padic_fermat_quotient(PadicScalar.from_rational(2, 3, 5))
    assert d.prec == 4
    assert d.congruent(-2, 4)


def test_division_by_p_exhausts_precision():
    x = PadicScalar.from_rational(0, 3, 2).divide_by_p()
    assert x.prec == 1
    with pytest.raises(PrecisionError):
        x.divide_by_p()


def test_field_adaptor():
    f = PadicField(5, 4)
    assert f.coerce("1/2") * 2 == f.one
    assert f.frobenius(f.coerce(3), 5) == f.coerce(3)


@settings(max_examples=80, deadline=None)
@given(st.integers(-10**6, 10**6).filter(lambda x: x != 0), P, st.integers(2, 8))
def test_inverse_roundtrip(n, p, k):
    if n % p ** k == 0:
        return
    x = PadicScalar.from_rational(n, p, k)
    y = x * padic_inv(x)
    assert y.congruent(1, y.prec)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), P, st.integers(2, 8))
def test_square_of_sqrt(m, p, k):
    a = PadicScalar.from_rational(1 + p * m, p, k)
    r = padic_sqrt_branch(a)
    assert (r * r).congruent(a, k)
