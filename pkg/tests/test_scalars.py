import pytest
from hypothesis import given, settings, strategies as st

from arithchern.scalars import (
    ConfigMismatch,
    CycScalar,
    RationalRing,
    RingConfig,
    cyclotomic_polynomial,
    fermat_quotient,
    prime_factors,
    val_p,
)

coords = st.lists(st.integers(-20, 20), min_size=2, max_size=2)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_zeta_relations():
    r = RingConfig(2, 4)
    z = r.z
    assert z * z == r.coerce(-1)
    assert z ** 4 == r.one
    assert r.frobenius(z, 3) == -z
    assert r.frobenius(z, 5) == z


def test_fermat_quotient_of_two():
    r = RingConfig(2, 1)
    assert fermat_quotient(r.coerce(2), 3) == r.coerce(-2)
    assert fermat_quotient(r.coerce(-1), 3) == r.zero


def test_fermat_quotient_of_root_of_unity_is_zero():
    r = RingConfig(2, 3)
    assert fermat_quotient(r.z, 7) == r.zero


def test_inverse_and_valuation():
    r = RingConfig(2, 4)
    a = r.z + 2
    assert a * a.inverse() == r.one
    assert r.val(r.coerce("3/4"), 2) == -2
    assert val_p(r.coerce(9), 3) == 2


def test_parse_and_format_roundtrip():
    r = RingConfig(2, 4)
    a = r.parse("2 + z")
    assert r.fmt(a) == "2 + z"
    assert r.parse(r.fmt(a)) == a


def test_config_mismatch():
    with pytest.raises(ConfigMismatch):
        RingConfig(2, 4).z + RingConfig(2, 3).z


def test_check_prime_rejects_divisors_of_M():
    with pytest.raises(ValueError):
        RingConfig(6, 1).check_prime(3)
    with pytest.raises(ValueError):
        RingConfig(3, 1)


def test_rational_ring():
    r = RationalRing()
    assert r.inv(r.coerce("2/3")) == r.coerce("3/2")
    assert r.in_A(r.coerce("1/8"))
    assert not r.in_A(r.coerce("1/3"))
    assert prime_factors(60) == {2, 3, 5}


@settings(max_examples=60, deadline=None)
@given(coords, coords, st.sampled_from([3, 5, 7]))
def test_frobenius_is_ring_homomorphism(a, b, p):
    r = RingConfig(2, 4)
    x, y = CycScalar(a, r), CycScalar(b, r)
    assert r.frobenius(x * y, p) == r.frobenius(x, p) * r.frobenius(y, p)
    assert r.frobenius(x + y, p) == r.frobenius(x, p) + r.frobenius(y, p)


@settings(max_examples=60, deadline=None)
@given(coords, st.sampled_from([3, 5, 7]))
def test_fermat_quotient_is_integral(a, p):
    r = RingConfig(2, 4)
    x = CycScalar(a, r)
    d = fermat_quotient(x, p)
    assert r.frobenius(x, p) == x ** p + p * d
    assert all(c.denominator % p for c in d.coords)
