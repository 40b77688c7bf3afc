"""Commutators of Frobenius lifts: curvature, 3-curvature, (1,1)-curvature.

All values are reported on the generators ``T_ij``.  Endomorphisms are
:class:`~arithchern.chern.FrobLift` objects; composing two of them gives
another one (Galois exponents multiply, images are substituted).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ._rational import QQ
from .chern import FormMatrix, FrobLift, chern_lift, trivial_lift
from .matseries import SeriesMatrix
from .series import Series, ShapeMismatch, default_names, div_exact_int, monomial_name

__all__ = [
    "CurvatureReport",
    "Q_form",
    "apply_lift",
    "commutator_on_generators",
    "compose",
    "curvature11",
    "curvature2",
    "curvature3",
    "diagonal_mod3_check",
    "graded_piece",
    "nested_commutator",
]


def apply_lift(f: Series, lift: FrobLift, sub=None) -> Series:
    """phi(f): Galois action on coefficients, then T -> Phi0."""
    if f.arity != lift.n * lift.n:
        raise ShapeMismatch(f"series in {f.arity} variables, lift on {lift.n}x{lift.n}")
    return lift.apply(f, sub)


def compose(outer: FrobLift, inner: FrobLift) -> FrobLift:
    """The endomorphism outer o inner, so T_ij -> outer(inner(T_ij))."""
    _same_shape(outer, inner)
    sub = outer.substitution()
    images = inner.Phi0.map(lambda e: outer.apply(e, sub))
    return FrobLift(outer.p * inner.p, outer.n, outer.order, images, outer.galois * inner.galois, "composite")


def _same_shape(a: FrobLift, b: FrobLift) -> None:
    if a.n != b.n or a.order != b.order:
        raise ShapeMismatch(f"lifts on ({a.n}, {a.order}) and ({b.n}, {b.order})")


def commutator_on_generators(l1: FrobLift, l2: FrobLift) -> SeriesMatrix:
    """[l1, l2](T) = l1(l2(T)) - l2(l1(T))."""
    return compose(l1, l2).Phi0 - compose(l2, l1).Phi0


def nested_commutator(a: FrobLift, b: FrobLift, c: FrobLift) -> SeriesMatrix:
    """[a, [b, c]](T) = a([b, c](T)) - [b, c](a(T)); [b, c] is only additive."""
    bc, cb = compose(b, c), compose(c, b)
    inner = bc.Phi0 - cb.Phi0
    sub = a.substitution()
    first = inner.map(lambda e: a.apply(e, sub))
    s_bc, s_cb = bc.substitution(), cb.substitution()
    second = a.Phi0.map(lambda e: bc.apply(e, s_bc) - cb.apply(e, s_cb))
    return first - second


def _divide(m: SeriesMatrix, d: int, witnesses) -> SeriesMatrix:
    return m.map(lambda e: div_exact_int(e, d, witnesses))


@dataclass
class CurvatureReport:
    kind: str
    primes: tuple
    n: int
    order: int
    entries: SeriesMatrix
    divisibility: dict = field(default_factory=dict)
    names: list | None = None

    @property
    def leading_degree(self) -> int | None:
        return self.entries.leading_degree()

    def is_zero(self) -> bool:
        return self.entries.is_zero()

    def witness(self):
        """(i, j, exponents, coefficient) of the first nonzero value, or None."""
        for i, row in enumerate(self.entries.entries):
            for j, e in enumerate(row):
                if e:
                    exps, c = e.first_term()
                    return i, j, exps, c
        return None

    def to_json(self) -> dict:
        ring = self.entries.ring
        names = self.names or default_names(self.entries.arity)
        out = {"kind": self.kind, "n": self.n, "order": self.order}
        for key, p in zip(("p", "p2", "p3"), self.primes):
            out[key] = p
        out["leading_degree"] = self.leading_degree
        rows = []
        for i, row in enumerate(self.entries.entries):
            for j, e in enumerate(row):
                if e:
                    terms = {monomial_name(exps, names): ring.fmt(c) for exps, c in e.items()}
                    rows.append({"i": i + 1, "j": j + 1, "terms": terms})
        out["entries"] = rows
        out["divisibility"] = "ok"
        out["divided_by"] = {str(p): k for p, k in sorted(self.divisibility.items())}
        return out

    def to_text(self) -> str:
        head = f"{self.kind} n={self.n} primes={','.join(map(str, self.primes))} order={self.order}"
        lines = [head, f"leading degree: {self.leading_degree}"]
        for i, row in enumerate(self.entries.entries):
            for j, e in enumerate(row):
                if e:
                    lines.append(f"  [{i + 1},{j + 1}] {e.render(self.names)}")
        if self.is_zero():
            lines.append("  zero")
        return "\n".join(lines)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def curvature2(q: FormMatrix, p: int, p2: int, order: int) -> CurvatureReport:
    """(1/pp') [phi_p, phi_p'] on the generators."""
    if p == p2:
        raise ValueError("curvature needs two distinct primes")
    lp, lp2 = chern_lift(q, p, order), chern_lift(q, p2, order)
    m = _divide(commutator_on_generators(lp, lp2), p * p2, (p, p2))
    return CurvatureReport("curvature", (p, p2), q.n, order, m, {p: 1, p2: 1})


def curvature3(q: FormMatrix, p: int, p2: int, p3: int, order: int) -> CurvatureReport:
    """(1/p'p'') [phi_p, [phi_p', phi_p'']] on the generators."""
    if p2 == p3:
        raise ValueError("3-curvature needs p' != p''")
    lifts = {r: chern_lift(q, r, order) for r in {p, p2, p3}}
    nested = nested_commutator(lifts[p], lifts[p2], lifts[p3])
    m = _divide(nested, p2 * p3, (p2, p3))
    return CurvatureReport("three", (p, p2, p3), q.n, order, m, {p2: 1, p3: 1})


def curvature11(q: FormMatrix, p: int, p2: int, order: int) -> CurvatureReport:
    """(1,1)-curvature: chern lift at p against the trivial lift at p'.

    Divided by pp' when p != p', by p when p == p'.
    """
    lp = chern_lift(q, p, order)
    lt = trivial_lift(p2, q.n, order, q.ring)
    comm = commutator_on_generators(lp, lt)
    if p == p2:
        m, div = _divide(comm, p, (p,)), {p: 1}
    else:
        m, div = _divide(comm, p * p2, (p, p2)), {p: 1, p2: 1}
    return CurvatureReport("mixed", (p, p2), q.n, order, m, div)


def graded_piece(report: CurvatureReport, mu: int) -> SeriesMatrix:
    """The values modulo (T)^(mu+1)."""
    if mu < 0 or mu > report.order:
        raise ValueError(f"degree {mu} outside 0..{report.order}")
    return report.entries.truncate(mu)


def Q_form(n: int, sign: int, i: int, ring, order: int) -> Series:
    """Q_i = sum_k (T_ki T_k'i' + sign T_k'i T_ki') with k' = k + r (0-based i < r)."""
    r = n // 2
    m = n * n

    def t(a, b):
        return Series.var(ring, m, order, a * n + b)

    acc = Series(ring, m, order)
    for k in range(r):
        acc = acc + t(k, i) * t(k + r, i + r) + (t(k + r, i) * t(k, i + r)).scale(sign)
    return acc


def diagonal_mod3_check(q: FormMatrix, lift: FrobLift) -> bool:
    """Phi_p(1+T) mod (T)^3 is diag(X, Y)/2 with the explicit X_ii, Y_ii."""
    n, ring = q.n, q.ring
    r, p, m = n // 2, lift.p, n * n
    Z = lift.Phi.truncate(2)
    c2 = p * (p - 1) // 2

    def t(a, b):
        return Series.var(ring, m, 2, a * n + b)

    one = Series.const(ring, m, 2, 1)
    for i in range(n):
        for j in range(n):
            if i != j and Z[i, j]:
                return False
    for i in range(r):
        a, b = t(i, i), t(i + r, i + r)
        Q = Q_form(n, q.sign, i, ring, 2)
        X = one.scale(2) + a.scale(2 * p) - (a * b).scale(p) + (a * a).scale(2 * c2) + Q.scale(p)
        Y = one.scale(2) + b.scale(2 * p) - (a * b).scale(p) + (b * b).scale(2 * c2) + Q.scale(p)
        if Z[i, i] != X.scale(QQ(1, 2)) or Z[i + r, i + r] != Y.scale(QQ(1, 2)):
            return False
    return True

