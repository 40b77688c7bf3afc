"""Frobenius lifts of the Chern connection attached to a form q.

For a form ``q`` with ``q^t = eps * q`` the lift at ``p`` sends the matrix of
coordinates ``x = 1 + T`` to

    Phi_p(x) = x^(p) * { (x^(p)t phi_p(q) x^(p))^-1 (x^t q x)^(p) }^(1/2)

where ``a^(p)`` raises every entry to the p-th power and the square root is
the binomial series.  A :class:`FrobLift` stores ``Phi0 = Phi_p(1 + T) - 1``
together with the Galois exponent acting on coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import isqrt

from ._rational import QQ, qq
from .matseries import SeriesMatrix, binomial_power, constant_inverse, entrywise_power_p, mat_inverse
from .padics import PadicField
from .scalars import RationalRing, RingConfig
from .series import Series, Substitution

__all__ = [
    "CheckResult",
    "FormMatrix",
    "FrobLift",
    "InvalidForm",
    "centralizer_check",
    "chern_lift",
    "globality_check",
    "ideal_check",
    "load_form",
    "split_form",
    "trivial_lift",
    "verify_bq_diagram",
    "verify_hq_diagram",
]


class InvalidForm(ValueError):
    pass


@dataclass
class CheckResult:
    """Boolean outcome with a witness describing the first failure."""

    ok: bool
    witness: str | None = None
    data: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def make_ring(M: int = 2, N: int = 1):
    return RationalRing(M) if N == 1 else RingConfig(M, N)


@dataclass(frozen=True)
class FormMatrix:
    n: int
    sign: int
    entries: tuple
    ring: object = field(default_factory=RationalRing)

    def __post_init__(self):
        rows = tuple(tuple(self.ring.coerce(c) for c in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if self.sign not in (1, -1):
            raise InvalidForm("sign must be +1 or -1")
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise InvalidForm(f"entries do not form a {self.n}x{self.n} matrix")
        for i in range(self.n):
            for j in range(self.n):
                if rows[j][i] != rows[i][j] * self.sign:
                    raise InvalidForm(f"q^t != {self.sign:+d} q at ({i}, {j})")
        try:
            constant_inverse([list(r) for r in rows], self.ring)
        except ZeroDivisionError:
            raise InvalidForm("q is not invertible") from None

    def frobenius(self, p: int) -> list[list]:
        return [[self.ring.frobenius(c, p) for c in row] for row in self.entries]

    def entrywise_power(self, p: int) -> list[list]:
        return [[c ** p for c in row] for row in self.entries]

    def roots_of_unity_or_zero(self) -> bool:
        one = self.ring.one
        order = 2 * getattr(self.ring, "N", 1)
        return all((not c) or c ** order == one for row in self.entries for c in row)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "sign": self.sign,
            "entries": [[self.ring.fmt(c) for c in row] for row in self.entries],
        }
        if getattr(self.ring, "N", 1) != 1:
            out["N"] = self.ring.N
        if self.ring.M != 2:
            out["M"] = self.ring.M
        return out


def load_form(data) -> FormMatrix:
    """Build a form from its JSON description (a dict, a JSON string, or a path)."""
    if isinstance(data, str):
        text = data
        if not text.lstrip().startswith("{"):
            with open(data) as fh:
                text = fh.read()
        data = json.loads(text)
    ring = make_ring(int(data.get("M", 2)), int(data.get("N", 1)))
    entries = [[ring.parse(str(c)) for c in row] for row in data["entries"]]
    return FormMatrix(int(data["n"]), int(data["sign"]), entries, ring)


def split_form(kind: str, n: int, ring=None) -> FormMatrix:
    """The split forms: symplectic, split-sym-even (n = 2r), split-sym-odd (n = 2r+1)."""
    ring = ring or RationalRing()
    z = [[0] * n for _ in range(n)]
    if kind in ("symplectic", "split-alt"):
        if n % 2:
            raise InvalidForm("symplectic split form needs even n")
        r = n // 2
        for i in range(r):
            z[i][i + r] = 1
            z[i + r][i] = -1
        return FormMatrix(n, -1, z, ring)
    if kind in ("split-sym-even", "split-sym") and n % 2 == 0:
        r = n // 2
        for i in range(r):
            z[i][i + r] = 1
            z[i + r][i] = 1
        return FormMatrix(n, 1, z, ring)
    if kind in ("split-sym-odd", "split-odd", "split-sym") and n % 2 == 1:
        r = n // 2
        z[0][0] = 1
        for i in range(r):
            z[1 + i][1 + r + i] = 1
            z[1 + r + i][1 + i] = 1
        return FormMatrix(n, 1, z, ring)
    if kind == "identity":
        for i in range(n):
            z[i][i] = 1
        return FormMatrix(n, 1, z, ring)
    raise InvalidForm(f"split form {kind!r} is not defined for n={n}")


@dataclass
class FrobLift:
    """A ring endomorphism of A[[T]]: coefficients by z -> z^galois, T -> Phi0."""

    p: int
    n: int
    order: int
    Phi0: SeriesMatrix
    galois: int
    kind: str = "chern"

    @property
    def Phi(self) -> SeriesMatrix:
        return self.Phi0.plus_identity()

    @property
    def ring(self):
        return self.Phi0.ring

    def images(self) -> list[Series]:
        return list(self.Phi0)

    def substitution(self) -> Substitution:
        return Substitution(self.images())

    def apply(self, f: Series, sub: Substitution | None = None) -> Series:
        ring = f.ring
        g = f.map_coefficients(lambda c: ring.galois_power(c, self.galois))
        return (sub or self.substitution())(g)

    def truncate(self, order: int) -> FrobLift:
        return FrobLift(self.p, self.n, order, self.Phi0.truncate(order), self.galois, self.kind)


def _sqrt_rational_branch(c, p: int):
    """Rational square root of c congruent to 1 mod p, or None."""
    c = qq(c)
    num, den = int(c.numerator), int(c.denominator)
    if num < 0:
        return None
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    for r in (QQ(rn, rd), -QQ(rn, rd)):
        if (int(r.numerator) - int(r.denominator)) % p == 0:
            return r
    return None


def chern_lift(q: FormMatrix, p: int, order: int) -> FrobLift:
    """Frobenius lift of the Chern connection attached to q, modulo (T)^(order+1)."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    ring = q.ring
    ring.check_prime(p)
    n = q.n
    T = SeriesMatrix.generic(ring, n, order)
    x = T.plus_identity()
    arity = n * n
    xp = entrywise_power_p(x, p)
    phq = SeriesMatrix.constant(ring, q.frobenius(p), arity, order)
    qm = SeriesMatrix.constant(ring, q.entries, arity, order)
    P = xp.T @ phq @ xp
    W = entrywise_power_p(x.T @ qm @ x, p)
    V = mat_inverse(P) @ W
    c0 = V.constant_part()
    one = ring.one
    scalar = c0[0][0]
    if all(c0[i][j] == (one if i == j else ring.zero) for i in range(n) for j in range(n)):
        root = V.minus_identity()
        Phi = xp @ binomial_power(root, QQ(1, 2))
    elif isinstance(ring, PadicField):
        # u(0) lies in p*Z_p; terms of u^i of degree <= order carry at least
        # i - order constant factors, hence valuation >= i - order.
        u = V.minus_identity()
        if any(not c.is_zero() and c.val < 1 for row in u.constant_part() for c in row):
            raise InvalidForm("u(0) is not divisible by p; q is not a p-adic unit form")
        Phi = xp @ binomial_power(u, QQ(1, 2), terms=ring.k + order + 1)
    elif isinstance(ring, RationalRing) and all(
        c0[i][j] == (scalar if i == j else 0) for i in range(n) for j in range(n)
    ) and (branch := _sqrt_rational_branch(scalar, p)) is not None:
        # phi_p(q) != q^(p): V(1) = c*1 with c a rational square; take the
        # root congruent to 1 mod p so the result is the p-adic branch.
        Phi = (xp @ binomial_power(V.scale(1 / scalar).minus_identity(), QQ(1, 2))).scale(branch)
    else:
        raise InvalidForm(
            f"u = V - 1 has constant term {[[ring.fmt(c) for c in r] for r in c0]}; "
            "q needs p-adic coefficients"
        )
    return FrobLift(p, n, order, Phi.minus_identity(), p, "chern")


def trivial_lift(p: int, n: int, order: int, ring=None) -> FrobLift:
    """The lift x -> x^(p)."""
    ring = ring or RationalRing()
    x = SeriesMatrix.generic(ring, n, order).plus_identity()
    return FrobLift(p, n, order, entrywise_power_p(x, p).minus_identity(), p, "trivial")


def _describe(diff) -> str:
    i, j, exps, lhs, rhs = diff
    return f"entry ({i + 1},{j + 1}) monomial {exps}: {lhs} != {rhs}"


def verify_hq_diagram(q: FormMatrix, lift: FrobLift) -> CheckResult:
    """Phi_p(x)^t phi_p(q) Phi_p(x) == (x^t q x)^(p) up to the truncation order."""
    ring, n, order = lift.ring, lift.n, lift.order
    arity = n * n
    Phi = lift.Phi
    phq = SeriesMatrix.constant(ring, q.frobenius(lift.p), arity, order)
    qm = SeriesMatrix.constant(ring, q.entries, arity, order)
    x = SeriesMatrix.generic(ring, n, order).plus_identity()
    lhs = Phi.T @ phq @ Phi
    rhs = entrywise_power_p(x.T @ qm @ x, lift.p)
    diff = lhs.first_difference(rhs)
    return CheckResult(diff is None, None if diff is None else _describe(diff))


def verify_bq_diagram(q: FormMatrix, lift: FrobLift) -> CheckResult:
    """S = x^(p)t phi_p(q) Phi_p(x) satisfies S^t = eps * S."""
    ring, n, order = lift.ring, lift.n, lift.order
    arity = n * n
    phq = SeriesMatrix.constant(ring, q.frobenius(lift.p), arity, order)
    x = SeriesMatrix.generic(ring, n, order).plus_identity()
    S = entrywise_power_p(x, lift.p).T @ phq @ lift.Phi
    St = S.T if q.sign == 1 else -S.T
    diff = St.first_difference(S)
    return CheckResult(diff is None, None if diff is None else _describe(diff))


def globality_check(lift: FrobLift) -> CheckResult:
    """Phi0 fixes 1 (zero constant terms) and has all coefficients in A."""
    ring = lift.ring
    for i, row in enumerate(lift.Phi0.entries):
        for j, e in enumerate(row):
            c = e.constant_term()
            if c:
                return CheckResult(
                    False,
                    f"Phi0 entry ({i + 1},{j + 1}) has constant term {ring.fmt(c)}: the lift does not fix 1",
                )
            for exps, c in e.items():
                if not ring.in_A(c):
                    return CheckResult(
                        False,
                        f"Phi0 entry ({i + 1},{j + 1}) monomial {exps} has coefficient "
                        f"{ring.fmt(c)} outside A",
                    )
    return CheckResult(True)


def ideal_check(q: FormMatrix, lift: FrobLift) -> CheckResult:
    """phi_p(x^t q x - q) == (x^t q x)^(p) - q^(p): phi_p preserves the ideal J."""
    ring, n, order = lift.ring, lift.n, lift.order
    arity = n * n
    qm = SeriesMatrix.constant(ring, q.entries, arity, order)
    x = SeriesMatrix.generic(ring, n, order).plus_identity()
    H = x.T @ qm @ x
    sub = lift.substitution()
    lhs = (H - qm).map(lambda f: lift.apply(f, sub))
    rhs = entrywise_power_p(H, lift.p) - SeriesMatrix.constant(ring, q.entrywise_power(lift.p), arity, order)
    diff = lhs.first_difference(rhs)
    return CheckResult(diff is None, None if diff is None else _describe(diff))


def centralizer_check(lift: FrobLift) -> CheckResult:
    """For q = 1, n = 2r: Phi_p at [[a, b], [-b, a]] commutes with [[0, 1], [-1, 0]]."""
    n, order, ring = lift.n, lift.order, lift.ring
    if n % 2:
        raise ValueError("centralizer check needs even n")
    r = n // 2
    m = 2 * r * r
    A = [[Series.var(ring, m, order, i * r + j) for j in range(r)] for i in range(r)]
    B = [[Series.var(ring, m, order, r * r + i * r + j) for j in range(r)] for i in range(r)]
    images = []
    for i in range(n):
        for j in range(n):
            bi, bj = divmod(i, r), divmod(j, r)
            blk, ii, jj = (bi[0], bj[0]), bi[1], bj[1]
            if blk in ((0, 0), (1, 1)):
                images.append(A[ii][jj])
            elif blk == (0, 1):
                images.append(B[ii][jj])
            else:
                images.append(-B[ii][jj])
    sub = Substitution(images)
    Phi = lift.Phi0.substitute(sub).plus_identity()
    J = [[0] * n for _ in range(n)]
    for i in range(r):
        J[i][i + r] = 1
        J[i + r][i] = -1
    Jm = SeriesMatrix.constant(ring, J, m, order)
    diff = (Phi @ Jm).first_difference(Jm @ Phi)
    return CheckResult(diff is None, None if diff is None else _describe(diff))
