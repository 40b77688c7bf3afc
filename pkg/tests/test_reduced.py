from fractions import Fraction

import pytest

from arithchern._rational import QQ
from arithchern.chern import chern_lift, split_form
from arithchern.reduced import (
    LOWER,
    UPPER,
    BiPoly,
    compose_fp,
    congruence_extract,
    corner_consistency,
    corner_three_consistency,
    corner_two_consistency,
    expected_g2,
    expected_g3,
    fp_poly,
    g_poly,
    lambda_closed_form,
    n2_symplectic_commutation,
    so_composition_check,
    so_curvature,
    so_torus_check,
    so_unipotent_check,
)


def f_direct(p, s):
    return lambda v, w: (s * (s * v + w) ** p + v ** p - s * w ** p) / 2


def g_direct(p, p2, s, v):
    # pointwise evaluation, independent of the coefficient-list composition
    fp, fp2 = f_direct(p, s), f_direct(p2, s)
    a = fp2(fp(v, 1), fp(1, v))
    b = fp(fp2(v, 1), fp2(1, v))
    return a - b


def test_fp_small():
    f = fp_poly(3)
    # ((v + w)^3 + v^3 - w^3) / 2 = v^3 + 3/2 v^2 w + 3/2 v w^2
    assert f.coeffs == (0, QQ(3, 2), QQ(3, 2), 1)


def test_fp_swaps_under_lower_sign():
    v = Fraction(2, 3)
    assert fp_poly(5, LOWER)(v, 1) == f_direct(5, -1)(v, Fraction(1))


@pytest.mark.parametrize("p,p2", [(3, 5), (5, 3), (3, 7)])
@pytest.mark.parametrize("s", [UPPER, LOWER])
def test_g_matches_pointwise_composition(p, p2, s):
    g = g_poly([p, p2], s)
    for v in (Fraction(1, 2), Fraction(-3, 7), Fraction(2)):
        assert g(v, 1) == g_direct(p, p2, s, v)


def test_g35_congruence():
    assert congruence_extract(g_poly([3, 5])) == [0, 0, QQ(15, 8)]
    assert expected_g2(3, 5) == QQ(15, 8)


def test_g357_congruence():
    got = [2 * c for c in congruence_extract(g_poly([3, 5, 7]))]
    assert got == [0, 0, QQ(-525, 16)]
    assert expected_g3(3, 5, 7) == QQ(-525, 16)


def test_g_vanishes_for_equal_primes():
    assert not any(g_poly([5, 5]).coeffs)


def test_compose_degree():
    assert compose_fp([3, 5]).degree == 15
    assert compose_fp([3, 5, 7]).degree == 105


def test_bipoly_render():
    assert BiPoly(1, (QQ(0), QQ(1)), UPPER).render() == "v"


@pytest.mark.parametrize("kind", ["split-sym-even", "symplectic"])
def test_corner_reduction(kind):
    assert corner_consistency(split_form(kind, 4), 3, 3)


def test_corner_commutators():
    res = corner_two_consistency(3, 5, UPPER)
    assert res and res.data["leading_degree"] is not None
    assert corner_three_consistency(3, 5, 7)


def test_so_checks():
    assert so_torus_check(3, 5, 5)
    assert so_unipotent_check(3)
    assert so_composition_check(3, 5)


def test_so_curvature_n2_vanishes():
    assert so_curvature(2, 3, 5, 5).is_zero()
    with pytest.raises(ValueError):
        so_curvature(3, 3, 5, 2)


def test_lambda_closed_form():
    lam = lambda_closed_form(3, 3)
    assert lam.constant_term() == 1
    assert n2_symplectic_commutation(3, 5, 3)
