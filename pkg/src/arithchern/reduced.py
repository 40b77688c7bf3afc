"""The binary forms f_p, f_pp', g_pp' and the small-dimensional reductions.

Every f_p is homogeneous of degree p in (v, w), and so is every composite,
so a :class:`BiPoly` stores a binary form as its coefficient list
``c[k] = coeff of v^k w^(d-k)``.  Setting ``w = 1`` reads the list as a
polynomial in ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from ._rational import QQ, fmt_rational, qq
from .chern import CheckResult, FormMatrix, FrobLift, _describe, chern_lift, split_form
from .curvature import commutator_on_generators, nested_commutator
from .matseries import (
    SeriesMatrix,
    binomial_power,
    binomial_power_series,
    entrywise_power_p,
    mat_inverse,
)
from .scalars import RationalRing
from .series import Series, Substitution

__all__ = [
    "BiPoly",
    "UPPER",
    "LOWER",
    "compose_fp",
    "congruence_extract",
    "corner_F",
    "corner_consistency",
    "corner_lift",
    "corner_three_consistency",
    "corner_two_consistency",
    "expected_g2",
    "expected_g3",
    "fp_poly",
    "g_poly",
    "lambda_closed_form",
    "lambda_lift",
    "n2_symplectic_commutation",
    "sigma_so",
    "so_composition_check",
    "so_curvature",
    "so_lift",
    "so_torus_check",
    "so_unipotent_check",
]

UPPER, LOWER = 1, -1


@dataclass(frozen=True)
class BiPoly:
    """Binary form of degree ``degree`` over Q; ``sign`` records the f_p convention."""

    degree: int
    coeffs: tuple
    sign: int = UPPER

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("a binary form of degree d has d + 1 coefficients")

    @classmethod
    def monomial(cls, i: int, j: int, c=1, sign=UPPER) -> BiPoly:
        coeffs = [QQ(0)] * (i + j + 1)
        coeffs[i] = qq(c)
        return cls(i + j, tuple(coeffs), sign)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def swap(self) -> BiPoly:
        """f(w, v)."""
        return BiPoly(self.degree, self.coeffs[::-1], self.sign)

    def coeff(self, i: int, j: int):
        """Coefficient of v^i w^j."""
        if i < 0 or j < 0 or i + j != self.degree:
            return QQ(0)
        return self.coeffs[i]

    def _check(self, other: BiPoly) -> None:
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other: BiPoly) -> BiPoly:
        self._check(other)
        return BiPoly(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.sign)

    def __sub__(self, other: BiPoly) -> BiPoly:
        self._check(other)
        return BiPoly(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.sign)

    def __neg__(self) -> BiPoly:
        return BiPoly(self.degree, tuple(-a for a in self.coeffs), self.sign)

    def scale(self, c) -> BiPoly:
        c = qq(c)
        return BiPoly(self.degree, tuple(a * c for a in self.coeffs), self.sign)

    def __mul__(self, other: BiPoly) -> BiPoly:
        a, b = self.coeffs, other.coeffs
        out = [QQ(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return BiPoly(self.degree + other.degree, tuple(out), self.sign)

    def __pow__(self, e: int) -> BiPoly:
        if e < 0:
            raise ValueError("negative power of a polynomial")
        acc = BiPoly(0, (QQ(1),), self.sign)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    def at_w1(self) -> list:
        """Coefficients of f(v, 1) in increasing powers of v."""
        return list(self.coeffs)

    def __call__(self, a, b):
        """Evaluate at ring elements (series, scalars): sum c_k a^k b^(d-k)."""
        d = self.degree
        pa, pb = [None] * (d + 1), [None] * (d + 1)
        pa[0] = a ** 0 if not isinstance(a, Series) else a.one()
        pb[0] = b ** 0 if not isinstance(b, Series) else b.one()
        for k in range(1, d + 1):
            pa[k] = pa[k - 1] * a
            pb[k] = pb[k - 1] * b
        acc = None
        for k, c in enumerate(self.coeffs):
            if c:
                term = pa[k] * pb[d - k]
                term = term.scale(c) if isinstance(term, Series) else term * c
                acc = term if acc is None else acc + term
        if acc is None:
            return pa[0] - pa[0]
        return acc

    def render(self, names=("v", "w")) -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, (k, self.degree - k)) if e
            )
            if not mono:
                parts.append(fmt_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{fmt_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __str__(self) -> str:
        return self.render()


def _linear(a, b, sign) -> BiPoly:
    return BiPoly(1, (qq(b), qq(a)), sign)


def fp_poly(p: int, sign: int = UPPER) -> BiPoly:
    """f_p(v, w) = (s (s v + w)^p + v^p - s w^p) / 2 with s = sign."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    s = sign
    coeffs = [QQ(0)] * (p + 1)
    for k in range(p + 1):
        # (s v + w)^p contributes C(p,k) s^k v^k w^(p-k)
        coeffs[k] += s * comb(p, k) * s ** k
    coeffs[p] += 1
    coeffs[0] -= s
    return BiPoly(p, tuple(c / 2 for c in coeffs), sign)


def _apply_fp(p: int, sign: int, a: BiPoly, b: BiPoly) -> BiPoly:
    """f_p(a, b) for binary forms a, b of equal degree."""
    s = sign
    inner = a.scale(s) + b
    return ((inner ** p).scale(s) + a ** p - (b ** p).scale(s)).scale(QQ(1, 2))


def _chain(applied: list[int], sign: int) -> BiPoly:
    """Apply f_{applied[0]} first, then the next prime to the pair (F(v,w), F(w,v))."""
    v = _linear(1, 0, sign)
    w = v.swap()
    a, b = v, w
    for p in applied:
        a, b = _apply_fp(p, sign, a, b), _apply_fp(p, sign, b, a)
    return a


def compose_fp(primes, sign: int = UPPER) -> BiPoly:
    """f_{pp'} = f_p'(f_p(v,w), f_p(w,v)); f_{pp'p''} = f_p(f_p'(f_p''(..)..)..).

    Two indices apply the first prime innermost; three indices apply the
    last prime innermost.
    """
    primes = list(primes)
    if len(primes) == 1:
        return fp_poly(primes[0], sign)
    if len(primes) == 2:
        return _chain(primes, sign)
    if len(primes) == 3:
        return _chain(primes[::-1], sign)
    raise ValueError("compose_fp takes one, two or three primes")


def g_poly(primes, sign: int = UPPER) -> BiPoly:
    """g_{pp'} = f_{pp'} - f_{p'p}; g_{pp'p''} = f_{pp'p''} - f_{p'pp''} - f_{p''pp'} + f_{p''p'p}."""
    primes = list(primes)
    if len(primes) == 2:
        p, p2 = primes
        return compose_fp([p, p2], sign) - compose_fp([p2, p], sign)
    if len(primes) == 3:
        p, p2, p3 = primes
        return (
            compose_fp([p, p2, p3], sign)
            - compose_fp([p2, p, p3], sign)
            - compose_fp([p3, p, p2], sign)
            + compose_fp([p3, p2, p], sign)
        )
    raise ValueError("g_poly takes two or three primes")


def congruence_extract(g: BiPoly, upto: int = 2) -> list:
    """Coefficients of g(v, 1) mod v^(upto+1)."""
    return [g.coeffs[k] if k <= g.degree else QQ(0) for k in range(upto + 1)]


def expected_g2(p: int, p2: int, sign: int = UPPER):
    """The predicted v^2 coefficient of g_{pp'}(v, 1): sign * pp'(p' - p)/16."""
    return QQ(sign * p * p2 * (p2 - p), 16)


def expected_g3(p: int, p2: int, p3: int):
    """The predicted v^2 coefficient of 2 g_{pp'p''}(v, 1), upper sign."""
    return QQ(-p * p2 * p3 * (p3 - 2) * (p2 - p), 32)


# -- corner reduction -------------------------------------------------------


def _corner_vars(ring, r: int, order: int):
    m = r * r
    return [[Series.var(ring, m, order, i * r + j) for j in range(r)] for i in range(r)]


def corner_F(p: int, sign: int, B: list[list]) -> list[list]:
    """F_p(B)_ij = f_p(B_ij, B_ji) for a square array B of ring elements."""
    f = fp_poly(p, sign)
    r = len(B)
    return [[f(B[i][j], B[j][i]) for j in range(r)] for i in range(r)]


def corner_lift(p: int, sign: int, r: int, order: int, ring=None) -> FrobLift:
    """The endomorphism B -> F_p(B) of A[[B]] as a lift on r x r variables."""
    ring = ring or RationalRing()
    B = _corner_vars(ring, r, order)
    return FrobLift(p, r, order, SeriesMatrix(corner_F(p, sign, B)), p, "corner")


def _corner_substitution(q: FormMatrix, order: int) -> tuple[Substitution, list]:
    n, ring = q.n, q.ring
    if n % 2:
        raise ValueError("corner reduction needs n = 2r")
    r = n // 2
    B = _corner_vars(ring, r, order)
    zero = Series(ring, r * r, order)
    images = []
    for i in range(n):
        for j in range(n):
            images.append(B[i][j - r] if i < r <= j else zero)
    return Substitution(images), B


def corner_consistency(q: FormMatrix, p: int, order: int) -> CheckResult:
    """Phi0_p at [[0, B], [0, 0]] equals [[0, F_p(B)], [0, 0]]."""
    sign = q.sign
    lift = chern_lift(q, p, order)
    sub, B = _corner_substitution(q, order)
    got = lift.Phi0.substitute(sub)
    r = q.n // 2
    F = corner_F(p, sign, B)
    zero = B[0][0].zero()
    want = SeriesMatrix(
        [[F[i][j - r] if i < r <= j else zero for j in range(q.n)] for i in range(q.n)]
    )
    diff = got.first_difference(want)
    return CheckResult(diff is None, None if diff is None else _describe(diff))


def corner_two_consistency(p: int, p2: int, sign: int, r: int = 2) -> CheckResult:
    """[F_p, F_p'](B)_ij equals g_pp'(B_ij, B_ji), and is nonzero off the diagonal."""
    order = p * p2
    a = corner_lift(p, sign, r, order)
    b = corner_lift(p2, sign, r, order)
    comm = commutator_on_generators(a, b)
    g = g_poly([p, p2], sign)
    B = _corner_vars(a.ring, r, order)
    want = SeriesMatrix([[g(B[i][j], B[j][i]) for j in range(r)] for i in range(r)])
    diff = comm.first_difference(want)
    if diff is not None:
        return CheckResult(False, _describe(diff))
    if r > 1 and not comm[0, 1]:
        return CheckResult(False, "off-diagonal commutator vanished")
    return CheckResult(True, data={"leading_degree": comm.leading_degree()})


def corner_three_consistency(p: int, p2: int, p3: int, sign: int = UPPER, r: int = 2) -> CheckResult:
    """p'p'' phi_{pp'p''}(B_ij) = g_{p''p'p}(B_ij, B_ji) for the corner lifts."""
    order = p * p2 * p3
    lifts = {s: corner_lift(s, sign, r, order) for s in {p, p2, p3}}
    a, b, c = lifts[p], lifts[p2], lifts[p3]
    got = nested_commutator(a, b, c)
    g = g_poly([p3, p2, p], sign)
    B = _corner_vars(a.ring, r, order)
    want = SeriesMatrix([[g(B[i][j], B[j][i]) for j in range(r)] for i in range(r)])
    diff = got.first_difference(want)
    return CheckResult(diff is None, None if diff is None else _describe(diff))


# -- special orthogonal reduction -------------------------------------------


def sigma_so(p: int, a: SeriesMatrix) -> SeriesMatrix:
    """Sigma_p(a) = a^(p) {(a^-1)^(p) a^(p)}^(-1/2) for a = 1 + (augmentation)."""
    ap = entrywise_power_p(a, p)
    inv_p = entrywise_power_p(mat_inverse(a), p)
    return ap @ binomial_power((inv_p @ ap).minus_identity(), QQ(-1, 2))


def _unipotent(order: int, ring=None) -> SeriesMatrix:
    ring = ring or RationalRing()
    u, v, w = (Series.var(ring, 3, order, k) for k in range(3))
    one, zero = Series.const(ring, 3, order, 1), Series(ring, 3, order)
    return SeriesMatrix([[one, u, v], [zero, one, w], [zero, zero, one]])


def _unipotent_expected(fcorner: BiPoly, e: int, order: int) -> SeriesMatrix:
    ring = RationalRing()
    u, v, w = (Series.var(ring, 3, order, k) for k in range(3))
    one, zero = Series.const(ring, 3, order, 1), Series(ring, 3, order)
    return SeriesMatrix(
        [[one, u ** e, fcorner(v, u * w - v)], [zero, one, w ** e], [zero, zero, one]]
    )


def so_unipotent_check(p: int, order: int | None = None) -> CheckResult:
    """Sigma_p on [[1,u,v],[0,1,w],[0,0,1]] is [[1,u^p,f_p(v,uw-v)],[0,1,w^p],[0,0,1]]."""
    order = order or 2 * p
    got = sigma_so(p, _unipotent(order))
    diff = got.first_difference(_unipotent_expected(fp_poly(p, UPPER), p, order))
    return CheckResult(diff is None, None if diff is None else _describe(diff))


def so_composition_check(p: int, p2: int, order: int | None = None) -> CheckResult:
    """Sigma_p'(Sigma_p(a)) on the unipotent has corner f_pp'(v, uw - v); the two
    orders differ by g_pp'(v, uw - v), which is nonzero."""
    order = order or 2 * p * p2
    a = _unipotent(order)
    first = sigma_so(p2, sigma_so(p, a))
    second = sigma_so(p, sigma_so(p2, a))
    diff = first.first_difference(_unipotent_expected(compose_fp([p, p2]), p * p2, order))
    if diff is not None:
        return CheckResult(False, _describe(diff))
    corner = first[0, 2] - second[0, 2]
    if not corner:
        return CheckResult(False, "Sigma_p and Sigma_p' commute on the unipotent")
    exps, c = corner.first_term()
    return CheckResult(True, data={"witness": (exps, c), "degree": sum(exps)})


def so_torus_check(p: int, p2: int, order: int) -> CheckResult:
    """r = 1: Sigma_p(a) = a^p, so Sigma_p and Sigma_p' commute."""
    ring = RationalRing()
    a = SeriesMatrix([[Series.var(ring, 1, order, 0) + Series.const(ring, 1, order, 1)]])
    sp = sigma_so(p, a)
    if sp != entrywise_power_p(a, p):
        return CheckResult(False, f"Sigma_{p}(a) != a^{p}")
    lhs, rhs = sigma_so(p2, sp), sigma_so(p, sigma_so(p2, a))
    diff = lhs.first_difference(rhs)
    return CheckResult(diff is None, None if diff is None else _describe(diff))


# -- n = 2 symplectic closed form ------------------------------------------


def _det2(m: SeriesMatrix) -> Series:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def lambda_closed_form(p: int, order: int, ring=None) -> Series:
    """lambda_p(x) = (det(x^(p)) / det(x)^p)^(-1/2) with x = 1 + T, n = 2."""
    ring = ring or RationalRing()
    x = SeriesMatrix.generic(ring, 2, order).plus_identity()
    num = _det2(entrywise_power_p(x, p))
    den = _det2(x) ** p
    ratio = num * binomial_power_series(den - den.one(), -1)
    return binomial_power_series(ratio - ratio.one(), QQ(-1, 2))


def lambda_lift(p: int, order: int, ring=None) -> FrobLift:
    """The lift x -> lambda_p(x) x^(p)."""
    ring = ring or RationalRing()
    lam = lambda_closed_form(p, order, ring)
    x = SeriesMatrix.generic(ring, 2, order).plus_identity()
    Phi = entrywise_power_p(x, p).scale_series(lam)
    return FrobLift(p, 2, order, Phi.minus_identity(), p, "lambda")


def n2_symplectic_commutation(p: int, p2: int, order: int, q: FormMatrix | None = None) -> CheckResult:
    """The closed form agrees with chern_lift and the two closed-form lifts commute."""
    q = q or split_form("symplectic", 2)
    for s in (p, p2):
        lam = lambda_lift(s, order, q.ring)
        diff = lam.Phi0.first_difference(chern_lift(q, s, order).Phi0)
        if diff is not None:
            return CheckResult(False, f"closed form at p={s}: " + _describe(diff))
    a, b = lambda_lift(p, order, q.ring), lambda_lift(p2, order, q.ring)
    comm = commutator_on_generators(a, b)
    if not comm.is_zero():
        zero = comm.map(lambda e: e.zero())
        return CheckResult(False, "closed-form lifts do not commute: " + _describe(comm.first_difference(zero)))
    return CheckResult(True)


def so_lift(p: int, r: int, order: int, ring=None) -> FrobLift:
    """Sigma_p on A[[a - 1]] for a generic r x r matrix a."""
    ring = ring or RationalRing()
    a = SeriesMatrix.generic(ring, r, order).plus_identity()
    return FrobLift(p, r, order, sigma_so(p, a).minus_identity(), p, "so")


def so_curvature(n: int, p: int, p2: int, order: int):
    """(1/pp') [Sigma_p, Sigma_p'] on the generators of A[[a - 1]], a of size n/2."""
    from .curvature import CurvatureReport, _divide

    if n % 2 or n < 2:
        raise ValueError("the special orthogonal reduction needs even n >= 2")
    if p == p2:
        raise ValueError("curvature needs two distinct primes")
    r = n // 2
    a, b = so_lift(p, r, order), so_lift(p2, r, order)
    m = _divide(commutator_on_generators(a, b), p * p2, (p, p2))
    names = [f"A_{i + 1}{j + 1}" for i in range(r) for j in range(r)]
    return CurvatureReport("so", (p, p2), n, order, m, {p: 1, p2: 1}, names)
