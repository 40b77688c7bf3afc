import pytest

from arithchern.unitary import (
    UCElem,
    coefficient_contradiction,
    embedding_check,
    relation_check,
    uc_commutator_check,
    uc_lift_p,
    uc_lift_pbar,
    unitary_curvature,
)


def test_beta_squared_reduces():
    b = UCElem.beta(4)
    a = UCElem.alpha(4)
    assert b * b == (a * 2 + a * a) * -1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_chern_lift_preserves_relation(p):
    assert relation_check(uc_lift_p(p, 6))


def test_trivial_lift_breaks_relation():
    res = relation_check(uc_lift_pbar(5, 4))
    assert not res
    assert "10" in res.witness


@pytest.mark.parametrize("p,p2", [(3, 5), (3, 3), (5, 5), (5, 7)])
def test_coefficient_contradiction(p, p2):
    # alpha-coefficient of (1+a)^(2m) - (2a+a^2)^m is 2m since m >= 3
    assert coefficient_contradiction(p, p2) == (2 * p * p2, 4 * p * p2)


@pytest.mark.parametrize("p,p2", [(3, 5), (3, 3)])
def test_commutator_witness(p, p2):
    res = uc_commutator_check(p, p2, 3)
    assert res
    assert res.data["alpha_power"] >= 1


def test_embedding_of_engine_lift():
    assert embedding_check(3, 5)


def test_unitary_curvature_nonzero():
    rep = unitary_curvature(3, 5, 3)
    assert not rep.is_zero()
    assert rep.entries[0, 0] == rep.entries[1, 1]
    assert rep.entries[0, 1] == -rep.entries[1, 0]
    assert "alpha" in rep.to_text()
