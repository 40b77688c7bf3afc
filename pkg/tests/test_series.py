import pytest
from hypothesis import given, settings, strategies as st

from arithchern._rational import QQ
from arithchern.scalars import RationalRing
from arithchern.series import (
    DivisibilityViolation,
    Series,
    Substitution,
    default_names,
    div_exact_int,
    mul_trunc,
)

R = RationalRing()


def series(arity, order, data):
    return Series.from_dict(R, arity, order, data)


def random_series(arity, order, constant=True):
    exps = st.tuples(*[st.integers(0, order)] * arity).filter(
        lambda e: sum(e) <= order and (constant or sum(e) > 0)
    )
    return st.dictionaries(exps, st.integers(-9, 9), max_size=6).map(lambda d: series(arity, order, d))


def test_truncated_product():
    x = Series.var(R, 1, 3, 0)
    g = x.one()
    for _ in range(5):
        g = g * (x.one() + x)
    assert [g.coeff((j,)) for j in range(4)] == [1, 5, 10, 10]
    with pytest.raises(ValueError):
        g.coeff((4,))


def test_render_graded_lex():
    f = series(2, 3, {(0, 1): 2, (1, 0): 1, (2, 0): QQ(1, 2)})
    assert f.render(["a", "b"]) == "a + 2*b + 1/2*a^2"


def test_default_names():
    assert default_names(4) == ["T_11", "T_12", "T_21", "T_22"]


def test_substitution_rejects_constant_term():
    x = Series.var(R, 1, 2, 0)
    with pytest.raises(ValueError):
        Substitution([x + x.one()])


def test_div_exact_int_certificate():
    f = series(1, 2, {(1,): 6, (2,): 3})
    assert div_exact_int(f, 3, [3]) == series(1, 2, {(1,): 2, (2,): 1})
    with pytest.raises(DivisibilityViolation):
        div_exact_int(series(1, 2, {(1,): 6, (2,): 4}), 3, [3])


@settings(max_examples=60, deadline=None)
@given(random_series(2, 4), random_series(2, 4), random_series(2, 4))
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


@settings(max_examples=60, deadline=None)
@given(random_series(2, 5), random_series(2, 5))
def test_truncation_commutes_with_product(f, g):
    assert mul_trunc(f.truncate(3), g.truncate(3)) == (f * g).truncate(3)


@settings(max_examples=40, deadline=None)
@given(random_series(2, 4), random_series(2, 4), random_series(2, 4, False), random_series(2, 4, False))
def test_substitution_is_homomorphism(f, g, a, b):
    sub = Substitution([a, b])
    assert sub(f * g) == sub(f) * sub(g)
    assert sub(f + g) == sub(f) + sub(g)
