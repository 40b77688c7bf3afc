import json

import pytest

from arithchern._rational import QQ
from arithchern.chern import chern_lift, split_form
from arithchern.curvature import (
    Q_form,
    apply_lift,
    commutator_on_generators,
    compose,
    curvature11,
    curvature2,
    curvature3,
    diagonal_mod3_check,
    graded_piece,
)
from arithchern.series import Series


def test_apply_lift_is_multiplicative():
    q = split_form("split-sym-even", 2)
    lift = chern_lift(q, 3, 3)
    ring = lift.ring
    f = Series.var(ring, 4, 3, 0) + Series.var(ring, 4, 3, 1, 2)
    g = Series.var(ring, 4, 3, 3) * Series.var(ring, 4, 3, 2)
    assert apply_lift(f * g, lift) == apply_lift(f, lift) * apply_lift(g, lift)


def test_compose_order_of_application():
    q = split_form("symplectic", 2)
    a, b = chern_lift(q, 3, 2), chern_lift(q, 5, 2)
    ab = compose(a, b)
    assert ab.p == 15
    assert ab.Phi0 == b.Phi0.map(lambda e: apply_lift(e, a))


def test_commutator_is_antisymmetric():
    q = split_form("split-sym-even", 2)
    a, b = chern_lift(q, 3, 2), chern_lift(q, 5, 2)
    assert commutator_on_generators(a, b) == -commutator_on_generators(b, a)


@pytest.mark.parametrize("kind", ["split-sym-even", "symplectic"])
def test_even_n_vanishes_mod_cube(kind):
    rep = curvature2(split_form(kind, 4), 3, 5, 2)
    assert graded_piece(rep, 2).is_zero()


def test_n2_alternating_vanishes():
    assert curvature2(split_form("symplectic", 2), 3, 5, 5).is_zero()


def test_n1_vanishes():
    assert curvature2(split_form("split-sym-odd", 1), 3, 7, 6).is_zero()


def test_mixed_curvature_values():
    q = split_form("split-sym-even", 2)
    ring = q.ring
    t12 = Series.var(ring, 4, 2, 1)
    t21 = Series.var(ring, 4, 2, 2)
    want = (t12 * t21).scale(QQ(1, 2))
    rep = curvature11(q, 3, 5, 2)
    assert rep.entries[0, 0] == want and rep.entries[1, 1] == want
    assert not rep.entries[0, 1] and not rep.entries[1, 0]
    same = curvature11(q, 3, 3, 2)
    assert same.entries[0, 0] == want.scale(3)


def test_Q_form():
    ring = split_form("symplectic", 2).ring
    t = [Series.var(ring, 4, 2, i) for i in range(4)]
    assert Q_form(2, -1, 0, ring, 2) == t[0] * t[3] - t[2] * t[1]


def test_diagonal_mod3():
    q = split_form("split-sym-even", 4)
    assert diagonal_mod3_check(q, chern_lift(q, 5, 2))


def test_three_curvature_runs_and_divides():
    rep = curvature3(split_form("split-sym-even", 2), 3, 5, 7, 2)
    assert rep.divisibility == {5: 1, 7: 1}
    with pytest.raises(ValueError):
        curvature3(split_form("split-sym-even", 2), 3, 5, 5, 2)


def test_report_zero_json():
    rep = curvature2(split_form("symplectic", 2), 3, 5, 3)
    data = json.loads(rep.dumps())
    assert data["leading_degree"] is None
    assert data["entries"] == []


def test_graded_piece_bounds():
    rep = curvature2(split_form("symplectic", 2), 3, 5, 2)
    with pytest.raises(ValueError):
        graded_piece(rep, 3)
