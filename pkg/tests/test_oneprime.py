import pytest

from arithchern.chern import FormMatrix, load_form, make_ring, split_form
from arithchern.oneprime import hensel_oracle, lhs_engine, n1_identity_check, rhs_sunny, vanishes

R = make_ring()
ALT2 = {"n": 2, "sign": -1, "entries": [["0", "2"], ["-2", "0"]]}


def scalar(x):
    return FormMatrix(1, 1, [[x]], R)


def test_rhs_q_one_is_zero():
    assert rhs_sunny(scalar(1), 3, 4).residues() == [[0]]


def test_rhs_q_two():
    # 1 + 3 (1/8)(-2) = 1/4, branch root of 4 is -2, fermat quotient 2, negate
    assert rhs_sunny(scalar(2), 3, 5).residues() == [[-2]]
    assert hensel_oracle(2, 3, 5).congruent(-2, 4)


def test_rhs_alternating_two():
    assert rhs_sunny(load_form(ALT2), 3, 5).residues() == [[-2, 0], [0, -2]]


@pytest.mark.parametrize("q,p,k", [(2, 3, 5), (3, 5, 4), ("1/2", 5, 4)])
def test_engine_matches_closed_form(q, p, k):
    rhs = rhs_sunny(scalar(q), p, k)
    lhs = lhs_engine(scalar(q), p, 2, k).value
    assert rhs.congruent(lhs, k - 1)
    assert rhs[0, 0].congruent(hensel_oracle(q, p, k), k - 1)


def test_engine_constant_term_stable_in_order():
    a = lhs_engine(scalar(2), 3, 1, 4).value
    b = lhs_engine(scalar(2), 3, 3, 4).value
    assert a.congruent(b, 3)


@pytest.mark.parametrize("q", [2, -1, 1])
def test_n1_identity(q):
    assert n1_identity_check(q, 3, 3, 4)


@pytest.mark.parametrize("kind,n", [("split-sym-even", 2), ("symplectic", 2), ("split-sym-odd", 3)])
def test_split_forms_vanish(kind, n):
    assert vanishes(split_form(kind, n), 5, 4)


@pytest.mark.parametrize("q,p", [(1, 3), (-1, 3), (2, 3), (3, 5), ("1/2", 3), ("1/2", 5)])
def test_vanishing_iff_root_of_unity(q, p):
    assert vanishes(scalar(q), p, 4) == (q in (1, -1))


def test_non_unit_form_rejected():
    with pytest.raises(ValueError):
        rhs_sunny(scalar(3), 3, 4)
