"""Capped-precision p-adic numbers for odd p.

A :class:`PadicScalar` is ``unit * p^val + O(p^prec)``.  ``prec`` is an
absolute precision: the value is only known modulo ``p^prec``.  Arithmetic
propagates precision conservatively; dividing by ``p`` costs one digit.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._rational import RATIONAL_TYPES, qq, val_rational

__all__ = [
    "PadicField",
    "PadicScalar",
    "PrecisionError",
    "padic_fermat_quotient",
    "padic_inv",
    "padic_sqrt_branch",
]


class PrecisionError(ArithmeticError):
    """Raised when a result would be known to zero digits."""


def _check_p(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")


class PadicScalar:
    __slots__ = ("p", "unit", "val", "prec")

    def __init__(self, p: int, unit: int, val: int, prec: int):
        # normalise: strip factors of p out of unit, reduce modulo p^(prec-val)
        if unit:
            while unit % p == 0:
                unit //= p
                val += 1
        if not unit or val >= prec:
            if prec <= 0 and val >= 0:
                raise PrecisionError(f"result known to 0 digits (O({p}^{prec}))")
            unit, val = 0, prec
        else:
            unit %= p ** (prec - val)
        self.p = p
        self.unit = unit
        self.val = val
        self.prec = prec

    @classmethod
    def from_rational(cls, x, p: int, prec: int) -> PadicScalar:
        x = qq(x)
        if x == 0:
            return cls(p, 0, prec, prec)
        v = val_rational(x, p)
        if v >= prec:
            return cls(p, 0, prec, prec)
        num, den = int(x.numerator), int(x.denominator)
        num //= p ** max(v, 0)
        den //= p ** max(-v, 0)
        m = p ** (prec - v)
        return cls(p, num * pow(den, -1, m) % m, v, prec)

    @classmethod
    def zero(cls, p: int, prec: int) -> PadicScalar:
        return cls(p, 0, prec, prec)

    # -- predicates / views ---------------------------------------------
    def is_zero(self) -> bool:
        return self.unit == 0

    def __bool__(self) -> bool:
        return self.unit != 0

    @property
    def relprec(self) -> int:
        return self.prec - self.val

    def residue(self) -> int:
        """Integer representative modulo p^prec (requires val >= 0)."""
        if self.val < 0:
            raise ValueError("negative valuation has no integral residue")
        return self.unit * self.p ** self.val % self.p ** max(self.prec, 0)

    def congruent(self, other, digits: int) -> bool:
        """True if self - other vanishes modulo p^digits (both known that far)."""
        d = self - other
        if min(self.prec, _prec_of(other, self.prec)) < digits:
            return False
        return d.is_zero() or d.val >= digits

    def __repr__(self) -> str:
        return f"PadicScalar({self})"

    def __str__(self) -> str:
        return f"{self.unit} * {self.p}^{self.val} + O({self.p}^{self.prec})"

    def __eq__(self, other) -> bool:
        if isinstance(other, RATIONAL_TYPES):
            other = PadicScalar.from_rational(other, self.p, self.prec)
        if not isinstance(other, PadicScalar):
            return NotImplemented
        return (self.p, self.unit, self.val, self.prec) == (other.p, other.unit, other.val, other.prec)

    def __hash__(self) -> int:
        return hash((self.p, self.unit, self.val, self.prec))

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other) -> PadicScalar:
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise ValueError(f"prime mismatch {self.p} vs {other.p}")
            return other
        if isinstance(other, RATIONAL_TYPES):
            return PadicScalar.from_rational(other, self.p, max(self.prec, 1))
        return NotImplemented

    def __neg__(self) -> PadicScalar:
        return PadicScalar(self.p, -self.unit, self.val, self.prec)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        prec = min(self.prec, other.prec)
        if not self.unit:
            return PadicScalar(p, other.unit, other.val, prec)
        if not other.unit:
            return PadicScalar(p, self.unit, self.val, prec)
        m = min(self.val, other.val)
        s = self.unit * p ** (self.val - m) + other.unit * p ** (other.val - m)
        return PadicScalar(p, s, m, prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            # exact rational factor: no precision lost beyond its valuation
            c = qq(other)
            if c == 0:
                return PadicScalar.zero(self.p, self.prec)
            v = val_rational(c, self.p)
            cu = PadicScalar.from_rational(c, self.p, v + max(self.relprec, 1))
            return PadicScalar(self.p, self.unit * cu.unit, self.val + v, self.prec + v)
        if not isinstance(other, PadicScalar):
            return NotImplemented
        if other.p != self.p:
            raise ValueError(f"prime mismatch {self.p} vs {other.p}")
        prec = min(self.prec + other.val, other.prec + self.val)
        return PadicScalar(self.p, self.unit * other.unit, self.val + other.val, prec)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> PadicScalar:
        if e < 0:
            return padic_inv(self) ** (-e)
        acc = PadicScalar.from_rational(1, self.p, self.prec if self.val >= 0 else self.relprec)
        base = self
        first = True
        while e:
            if e & 1:
                acc = base if first else acc * base
                first = False
            e >>= 1
            if e:
                base = base * base
        return acc

    def __truediv__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return self * (1 / qq(other))
        return self * padic_inv(other)

    def divide_by_p(self, times: int = 1) -> PadicScalar:
        """Exact division by p^times; absolute precision drops by ``times``."""
        if self.unit == 0:
            return PadicScalar(self.p, 0, self.prec - times, self.prec - times)
        return PadicScalar(self.p, self.unit, self.val - times, self.prec - times)


def _prec_of(x, default: int) -> int:
    return x.prec if isinstance(x, PadicScalar) else default


def padic_inv(a: PadicScalar) -> PadicScalar:
    if a.is_zero():
        raise ZeroDivisionError("inverse of p-adic zero")
    r = a.relprec
    m = a.p ** r
    return PadicScalar(a.p, pow(a.unit, -1, m), -a.val, r - a.val)


def padic_sqrt_branch(a: PadicScalar) -> PadicScalar:
    """The square root congruent to 1 mod p, by Newton iteration."""
    p = a.p
    if a.is_zero() or a.val != 0 or a.unit % p != 1:
        raise ValueError(f"{a} is not congruent to 1 mod {p}")
    k = a.prec
    r, known = 1, 1
    while known < k:
        known = min(2 * known, k)
        m = p ** known
        # r <- r - (r^2 - a) / (2r)
        r = (r - (r * r - a.unit) * pow(2 * r, -1, m)) % m
    return PadicScalar(p, r, 0, k)


def padic_fermat_quotient(a: PadicScalar) -> PadicScalar:
    """(a - a^p) / p, the p-derivation of the identity Frobenius on Z_p."""
    if not a.is_zero() and a.val < 0:
        raise ValueError("Fermat quotient needs a p-integral argument")
    return (a - a ** a.p).divide_by_p()


@dataclass(frozen=True)
class PadicField:
    """Coefficient-ring adaptor for Q_p at capped absolute precision k.

    Frobenius acts trivially (the only Frobenius lift on Z_p is the identity).
    """

    p: int
    k: int

    def __post_init__(self):
        _check_p(self.p)
        if self.k < 1:
            raise ValueError("precision must be positive")

    @property
    def zero(self) -> PadicScalar:
        return PadicScalar.zero(self.p, self.k)

    @property
    def one(self) -> PadicScalar:
        return PadicScalar.from_rational(1, self.p, self.k)

    def coerce(self, x) -> PadicScalar:
        if isinstance(x, PadicScalar):
            return x
        if isinstance(x, str):
            x = qq(x)
        return PadicScalar.from_rational(x, self.p, self.k)

    def frobenius(self, a, p: int):
        return a

    def galois_power(self, a, e: int):
        return a

    def inv(self, a: PadicScalar) -> PadicScalar:
        return padic_inv(a)

    def val(self, a: PadicScalar, p: int):
        if p != self.p:
            raise ValueError("valuation at a foreign prime")
        return float("inf") if a.is_zero() else a.val

    def in_A(self, a) -> bool:
        return a.is_zero() or a.val >= 0

    def fmt(self, a: PadicScalar) -> str:
        return str(a)

    def parse(self, s: str) -> PadicScalar:
        return self.coerce(s)

    def check_prime(self, p: int) -> None:
        if p != self.p:
            raise ValueError(f"p-adic ring at {self.p} used with prime {p}")
