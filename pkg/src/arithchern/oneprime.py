"""One prime: the (1,1)-curvature against the trivial lift over Z_p.

With a single prime the Chern lift need not fix 1, and the commutator

    Phi_pp(x) = (1/p) (Phi_p(x)^(p) - Phi_p(x^(p)))

has a value at x = 1 that detects whether q has root-of-unity entries.
Coefficients are rational (N = 1); the square root is taken p-adically.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from ._rational import QQ, qq
from .chern import CheckResult, FormMatrix, chern_lift, make_ring
from .matseries import SeriesMatrix, binomial_coefficient, constant_inverse, entrywise_power_p
from .padics import (
    PadicField,
    PadicScalar,
    padic_fermat_quotient,
    padic_inv,
    padic_sqrt_branch,
)
from .series import DivisibilityViolation, Series, Substitution

__all__ = [
    "PadicMatrix",
    "hensel_oracle",
    "lhs_engine",
    "n1_identity_check",
    "rhs_sunny",
    "vanishes",
]


@dataclass(frozen=True)
class PadicMatrix:
    rows: tuple

    @classmethod
    def from_rows(cls, rows) -> PadicMatrix:
        rows = tuple(tuple(r) for r in rows)
        p = {x.p for r in rows for x in r}
        if len(p) != 1:
            raise ValueError("entries must share one prime")
        return cls(rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def p(self) -> int:
        return self.rows[0][0].p

    @property
    def precision(self) -> int:
        """Certified absolute precision: the minimum over entries."""
        return min(x.prec for r in self.rows for x in r)

    def __getitem__(self, ij) -> PadicScalar:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: PadicMatrix) -> PadicMatrix:
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.rows[i][0] * other.rows[0][j]
                for k in range(1, n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return PadicMatrix.from_rows(out)

    def __add__(self, other: PadicMatrix) -> PadicMatrix:
        return PadicMatrix.from_rows(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def scale(self, c) -> PadicMatrix:
        return PadicMatrix.from_rows([[x * c for x in r] for r in self.rows])

    def map(self, fn) -> PadicMatrix:
        return PadicMatrix.from_rows([[fn(x) for x in r] for r in self.rows])

    def is_zero_mod(self, digits: int) -> bool:
        return all(x.is_zero() or x.val >= digits for r in self.rows for x in r)

    def congruent(self, other: PadicMatrix, digits: int) -> bool:
        return all(a.congruent(b, digits) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def residues(self) -> list[list[int]]:
        """Integer representatives modulo p^precision, in (-p^k/2, p^k/2]."""
        m = self.p ** self.precision
        out = []
        for r in self.rows:
            row = []
            for x in r:
                v = x.residue() % m
                row.append(v - m if v > m // 2 else v)
            out.append(row)
        return out

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + "]"


def _require_rational(q: FormMatrix) -> None:
    if getattr(q.ring, "N", 1) != 1:
        raise ValueError("one-prime computations need rational entries (N = 1)")


def _check_unit_form(q: FormMatrix, p: int) -> None:
    try:
        inv = constant_inverse([list(r) for r in q.entries], PadicField(p, 4))
    except ZeroDivisionError:
        raise ValueError(f"q is not invertible over Z_{p}") from None
    for r in inv:
        for x in r:
            if not x.is_zero() and x.val < 0:
                raise ValueError(f"q is not a unit form at {p}")


def _delta_rational(a, p: int):
    a = qq(a)
    return (a - a ** p) / p


def _inv_sqrt_series(U: PadicMatrix, k: int) -> PadicMatrix:
    """(1 + U)^(-1/2) for U in p * M_n(Z_p); term i has valuation >= i."""
    n = U.n
    p = U.p
    one = PadicScalar.from_rational(1, p, k)
    zero = PadicScalar.zero(p, k)
    acc = PadicMatrix.from_rows([[one if i == j else zero for j in range(n)] for i in range(n)])
    power = acc
    for i in range(1, k + 1):
        power = power @ U
        acc = acc + power.scale(binomial_coefficient(QQ(-1, 2), i))
    return acc


def rhs_sunny(q: FormMatrix, p: int, k: int) -> PadicMatrix:
    """-delta_pbar((1 + p (q^(p))^-1 delta_p q)^(-1/2)), known mod p^(k-1)."""
    _require_rational(q)
    _check_unit_form(q, p)
    field = PadicField(p, k)
    qp = [[x ** p for x in r] for r in q.entries]
    qp_inv = constant_inverse(qp, q.ring)
    dq = [[_delta_rational(x, p) for x in r] for r in q.entries]
    n = q.n
    U = [[p * sum(qp_inv[i][m] * dq[m][j] for m in range(n)) for j in range(n)] for i in range(n)]
    Up = PadicMatrix.from_rows([[field.coerce(x) for x in r] for r in U])
    if not Up.is_zero_mod(1):
        raise ValueError("argument is not congruent to 1 mod p")
    root = _inv_sqrt_series(Up, k)
    return root.map(lambda x: -padic_fermat_quotient(x))


def hensel_oracle(q, p: int, k: int) -> PadicScalar:
    """n = 1 value by Newton square root instead of the binomial series."""
    q = qq(q)
    base = 1 + p * _delta_rational(q, p) / q ** p
    b = PadicScalar.from_rational(base, p, k)
    r = padic_inv(padic_sqrt_branch(b))
    return -padic_fermat_quotient(r)


@dataclass
class EngineResult:
    value: PadicMatrix
    series: SeriesMatrix

    @property
    def precision(self) -> int:
        return self.value.precision


def lhs_engine(q: FormMatrix, p: int, order: int, k: int) -> EngineResult:
    """(1/p)(Phi_p(x)^(p) - Phi_p(x^(p))) from the p-adic Chern lift."""
    _require_rational(q)
    _check_unit_form(q, p)
    field = PadicField(p, k + 1)
    qa = FormMatrix(q.n, q.sign, [[field.coerce(x) for x in r] for r in q.entries], field)
    lift = chern_lift(qa, p, order)
    n = q.n
    Phi = lift.Phi
    x = SeriesMatrix.generic(field, n, order).plus_identity()
    trivial = Substitution(list(entrywise_power_p(x, p).minus_identity()))
    first = entrywise_power_p(Phi, p)
    second = Phi.substitute(trivial)
    diff = first - second

    def divide(e: Series) -> Series:
        terms = {}
        for exps, c in e.items():
            if c.val < 1:
                raise DivisibilityViolation(p, exps, str(c))
        for key, c in e.terms.items():
            terms[key] = c.divide_by_p()
        return Series(e.ring, e.arity, e.order, terms)

    series = diff.map(divide)
    zero = PadicScalar.zero(p, k)
    value = PadicMatrix.from_rows(
        [[series[i, j].terms.get(0, zero) for j in range(n)] for i in range(n)]
    )
    return EngineResult(value, series)


def n1_identity_check(q, p: int, order: int, k: int) -> CheckResult:
    """For n = 1: Phi_pp = Phi_pp(1) * x^(p^2) coefficientwise mod p^(k-1)."""
    form = q if isinstance(q, FormMatrix) else FormMatrix(1, 1, [[q]], make_ring())
    if form.n != 1:
        raise ValueError("the identity is stated for n = 1")
    res = lhs_engine(form, p, order, k)
    c = res.value[0, 0]
    f = res.series[0, 0]
    digits = k - 1
    for j in range(order + 1):
        got = f.coeff((j,))
        got = got if isinstance(got, PadicScalar) else PadicScalar.zero(p, k)
        want = c * comb(p * p, j)
        if not got.congruent(want, digits):
            return CheckResult(False, f"coefficient of T^{j}: {got} vs {want}")
    return CheckResult(True, data={"value": c})


def vanishes(q: FormMatrix, p: int, k: int) -> bool:
    """Phi_pp(1) = 0 mod p^(k-1)."""
    return rhs_sunny(q, p, k).is_zero_mod(k - 1)
