"""The quotient ring Z[1/2][[alpha, beta]]/(2 alpha + alpha^2 + beta^2).

The relation is monic in beta^2, so every element has a unique form
g0(alpha) + g1(alpha) beta with g0, g1 truncated power series in alpha.
Truncation is by alpha-degree: elements are known modulo alpha^(order+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from ._rational import QQ, qq
from .chern import CheckResult, chern_lift, split_form
from .matseries import binomial_coefficient, binomial_power_series
from .scalars import RationalRing
from .series import Series, Substitution

__all__ = [
    "UCElem",
    "coefficient_contradiction",
    "embedding_check",
    "relation_check",
    "uc_apply",
    "uc_commutator_check",
    "uc_lift_p",
    "uc_lift_pbar",
    "uc_mul",
    "unitary_curvature",
]


def _trunc(c: list, order: int) -> list:
    out = list(c[: order + 1])
    out += [QQ(0)] * (order + 1 - len(out))
    return out


def _umul(a: list, b: list, order: int) -> list:
    out = [QQ(0)] * (order + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), order + 1 - i)):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


# beta^2 = -2 alpha - alpha^2
_BETA_SQ = [QQ(0), QQ(-2), QQ(-1)]


@dataclass(frozen=True)
class UCElem:
    g0: tuple
    g1: tuple
    order: int

    @classmethod
    def make(cls, g0, g1, order: int) -> UCElem:
        return cls(tuple(_trunc([qq(c) for c in g0], order)), tuple(_trunc([qq(c) for c in g1], order)), order)

    @classmethod
    def const(cls, c, order: int) -> UCElem:
        return cls.make([c], [], order)

    @classmethod
    def alpha(cls, order: int) -> UCElem:
        return cls.make([0, 1], [], order)

    @classmethod
    def beta(cls, order: int) -> UCElem:
        return cls.make([], [1], order)

    def __add__(self, other: UCElem) -> UCElem:
        return UCElem(
            tuple(a + b for a, b in zip(self.g0, other.g0)),
            tuple(a + b for a, b in zip(self.g1, other.g1)),
            min(self.order, other.order),
        )

    def __neg__(self) -> UCElem:
        return UCElem(tuple(-a for a in self.g0), tuple(-a for a in self.g1), self.order)

    def __sub__(self, other: UCElem) -> UCElem:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UCElem):
            return uc_mul(self, other)
        c = qq(other)
        return UCElem(tuple(a * c for a in self.g0), tuple(a * c for a in self.g1), self.order)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> UCElem:
        acc = UCElem.const(1, self.order)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    def is_zero(self) -> bool:
        return not any(self.g0) and not any(self.g1)

    def constant_term(self):
        return self.g0[0]

    def first_difference(self, other: UCElem):
        """(component, alpha power, lhs, rhs) at the first differing coefficient."""
        for name, a, b in (("1", self.g0, other.g0), ("beta", self.g1, other.g1)):
            for k, (x, y) in enumerate(zip(a, b)):
                if x != y:
                    return name, k, x, y
        return None

    def render(self) -> str:
        def poly(c):
            terms = []
            for k, x in enumerate(c):
                if x:
                    mono = "" if k == 0 else ("alpha" if k == 1 else f"alpha^{k}")
                    terms.append(f"{x}" if not mono else (mono if x == 1 else f"{x}*{mono}"))
            return " + ".join(terms).replace("+ -", "- ")

        a, b = poly(self.g0), poly(self.g1)
        parts = [a] if a else []
        if b:
            parts.append(f"({b})*beta")
        return " + ".join(parts) or "0"


def uc_mul(a: UCElem, b: UCElem) -> UCElem:
    """(a0 + a1 beta)(b0 + b1 beta) = a0 b0 + a1 b1 beta^2 + (a0 b1 + a1 b0) beta."""
    order = min(a.order, b.order)
    g0 = _umul(a.g0, b.g0, order)
    g11 = _umul(_umul(a.g1, b.g1, order), _BETA_SQ, order)
    g0 = [x + y for x, y in zip(g0, g11)]
    g1 = [x + y for x, y in zip(_umul(a.g0, b.g1, order), _umul(a.g1, b.g0, order))]
    return UCElem(tuple(g0), tuple(g1), order)


def _binomial(base: UCElem, s) -> UCElem:
    """base^s for base = 1 + (alpha-adic augmentation)."""
    u = base - UCElem.const(1, base.order)
    if u.g0[0]:
        raise ValueError("base is not congruent to 1")
    # u has positive alpha-valuation in g0; g1 * beta squares into (alpha), so
    # u^(2k) lies in (alpha)^k and 2 * order + 2 terms suffice.
    acc = UCElem.const(1, base.order)
    power = acc
    for i in range(1, 2 * base.order + 2):
        power = power * u
        if power.is_zero():
            break
        acc = acc + power * binomial_coefficient(qq(s), i)
    return acc


def _one_plus_alpha(order: int) -> UCElem:
    return UCElem.make([1, 1], [], order)


def _K(p: int, order: int) -> UCElem:
    """K_p = ((1+alpha)^(2p) + beta^(2p))^(-1/2); the numerator is 1 in the quotient."""
    a1 = _one_plus_alpha(order)
    b = UCElem.beta(order)
    return _binomial(a1 ** (2 * p) + b ** (2 * p), QQ(-1, 2))


def uc_lift_p(p: int, order: int) -> tuple[UCElem, UCElem]:
    """Images (alpha_p, beta_p) of alpha, beta under the unitary Chern lift."""
    K = _K(p, order)
    alpha_p = _one_plus_alpha(order) ** p * K - UCElem.const(1, order)
    beta_p = UCElem.beta(order) ** p * K
    return alpha_p, beta_p


def uc_lift_pbar(p: int, order: int) -> tuple[UCElem, UCElem]:
    """The trivial lift: alpha -> (1+alpha)^p - 1, beta -> beta^p."""
    return _one_plus_alpha(order) ** p - UCElem.const(1, order), UCElem.beta(order) ** p


def uc_apply(x: UCElem, images: tuple[UCElem, UCElem]) -> UCElem:
    """Substitute alpha, beta by the images (both in the augmentation ideal)."""
    a, b = images
    if a.constant_term() or b.constant_term():
        raise ValueError("images must vanish at the identity")
    order = x.order
    acc = UCElem.const(0, order)
    power = UCElem.const(1, order)
    for k in range(order + 1):
        if x.g0[k] or x.g1[k]:
            term = power * x.g0[k] + (power * b) * x.g1[k]
            acc = acc + term
        power = power * a
    return acc


def relation_check(images: tuple[UCElem, UCElem]) -> CheckResult:
    """2 a + a^2 + b^2 reduces to 0: the lift preserves the ideal (f)."""
    a, b = images
    f = a * 2 + a * a + b * b
    if f.is_zero():
        return CheckResult(True)
    return CheckResult(False, f"relation image {f.render()}")


def _bivariate_lifts(p: int, p2: int, degree: int):
    """Both lifts on Q[[alpha, beta]] with the full K_p (no relation used)."""
    ring = RationalRing()
    a, b = Series.var(ring, 2, degree, 0), Series.var(ring, 2, degree, 1)
    one = a.one()
    a1 = one + a
    K = ((a1 * a1 + b * b) ** p) * binomial_power_series(a1 ** (2 * p) + b ** (2 * p) - one, -1)
    K = binomial_power_series(K - one, QQ(1, 2))
    chern = [a1 ** p * K - one, b ** p * K]
    trivial = [a1 ** p2 - one, b ** p2]
    return chern, trivial


def uc_commutator_check(p: int, p2: int, order: int) -> CheckResult:
    """phi_p and the trivial lift at p' fail to commute on alpha or beta.

    Both composites are formed on bivariate series (the trivial lift does not
    preserve the relation, so the bivariate representative of K_p is used) and
    then reduced to the quotient through alpha^order.  ``ok`` is True when a
    nonzero difference is found; the witness names it.
    """
    degree = 2 * order + 1
    chern, trivial = _bivariate_lifts(p, p2, degree)
    s_chern, s_triv = Substitution(chern), Substitution(trivial)
    for name, k in (("alpha", 0), ("beta", 1)):
        x = _reduce(s_chern(trivial[k]), order)
        y = _reduce(s_triv(chern[k]), order)
        diff = x.first_difference(y)
        if diff is not None:
            comp, j, lhs, rhs = diff
            mono = ("beta*" if comp == "beta" else "") + f"alpha^{j}"
            return CheckResult(
                True,
                f"image of {name}: coefficient of {mono} is {lhs} vs {rhs}",
                {"generator": name, "component": comp, "alpha_power": j, "lhs": lhs, "rhs": rhs},
            )
    return CheckResult(False, f"no difference up to alpha^{order}")


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_pow(a: list, e: int) -> list:
    acc = [1]
    for _ in range(e):
        acc = _poly_mul(acc, a)
    return acc


def _factor(p: int) -> list:
    """(1 + alpha)^(2p) - (2 alpha + alpha^2)^p as an exact integer polynomial."""
    x = [comb(2 * p, k) for k in range(2 * p + 1)]
    y = _poly_pow([0, 2, 1], p)
    return [a - (y[k] if k < len(y) else 0) for k, a in enumerate(x)]


def coefficient_contradiction(p: int, p2: int) -> tuple[int, int]:
    """alpha-coefficients of both sides of the squared commutation identity."""
    lhs = _factor(p * p2)
    rhs = _poly_mul(_poly_pow(_factor(p), p2), _poly_pow(_factor(p2), p))
    return lhs[1], rhs[1]


def embedding_check(p: int, order: int) -> CheckResult:
    """The 2x2 engine lift for q = 1 at [[alpha, beta], [-beta, alpha]] reproduces
    (alpha_p, beta_p) after reduction by the relation.

    The engine works in Q[[alpha, beta]] truncated at total degree ``order``;
    reduction maps beta^2 into (alpha), so alpha-powers up to (order - 1) // 2
    are determined and compared.
    """
    ring = RationalRing()
    q = split_form("identity", 2)
    lift = chern_lift(q, p, order)
    al, be = Series.var(ring, 2, order, 0), Series.var(ring, 2, order, 1)
    sub = Substitution([al, be, -be, al])
    Phi0 = lift.Phi0.substitute(sub)
    if Phi0[0, 0] != Phi0[1, 1] or Phi0[0, 1] != -Phi0[1, 0]:
        return CheckResult(False, "engine lift leaves the [[a, b], [-b, a]] block")
    keep = max((order - 1) // 2, 0)
    want = uc_lift_p(p, keep)
    for name, series, elem in (("alpha", Phi0[0, 0], want[0]), ("beta", Phi0[0, 1], want[1])):
        got = _reduce(series, keep)
        diff = got.first_difference(elem)
        if diff is not None:
            return CheckResult(False, f"{name}: {diff}")
    return CheckResult(True, data={"compared_alpha_order": keep})


def _reduce(f: Series, order: int) -> UCElem:
    """Image of a bivariate series in the quotient, through alpha^order."""
    acc = UCElem.const(0, order)
    a, b = UCElem.alpha(order), UCElem.beta(order)
    for (i, j), c in f.items():
        acc = acc + (a ** i * b ** j) * c
    return acc


def _to_series(x: UCElem, degree: int) -> Series:
    ring = RationalRing()
    a, b = Series.var(ring, 2, degree, 0), Series.var(ring, 2, degree, 1)
    acc = Series(ring, 2, degree)
    for k, c in enumerate(x.g0):
        if c:
            acc = acc + (a ** k).scale(c)
    for k, c in enumerate(x.g1):
        if c:
            acc = acc + (a ** k * b).scale(c)
    return acc


def unitary_curvature(p: int, p2: int, order: int):
    """[phi_p, trivial_p'] on alpha and beta in the quotient, divided by pp' (or p).

    Entries are reported on the 2 x 2 block [[alpha, beta], [-beta, alpha]] in
    canonical form g0(alpha) + g1(alpha) beta, through alpha^order.
    """
    from .curvature import CurvatureReport, _divide
    from .matseries import SeriesMatrix

    degree = 2 * order + 1
    chern, trivial = _bivariate_lifts(p, p2, degree)
    s_chern, s_triv = Substitution(chern), Substitution(trivial)
    vals = []
    for k in (0, 1):
        x = _reduce(s_chern(trivial[k]), order) - _reduce(s_triv(chern[k]), order)
        vals.append(_to_series(x, degree))
    al, be = vals
    m = SeriesMatrix([[al, be], [-be, al]])
    if p == p2:
        m, div = _divide(m, p, (p,)), {p: 1}
    else:
        m, div = _divide(m, p * p2, (p, p2)), {p: 1, p2: 1}
    return CurvatureReport("unitary", (p, p2), 2, order, m, div, ["alpha", "beta"])
