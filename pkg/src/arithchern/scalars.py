"""Exact arithmetic in the coefficient ring Z[1/M, zeta_N].

Elements are stored in the power basis ``1, z, ..., z^(phiN-1)`` modulo the
N-th cyclotomic polynomial, with exact rational coordinates.  Two ring
objects share one interface so that the series engine can stay agnostic of
the coefficients it carries:

* :class:`RingConfig` -- the cyclotomic ring, elements are :class:`CycScalar`;
* :class:`RationalRing` -- the ``N = 1`` fast path, elements are bare
  rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from ._rational import QQ, RATIONAL_TYPES, fmt_rational, qq, val_rational

__all__ = [
    "ConfigMismatch",
    "CycScalar",
    "RationalRing",
    "RingConfig",
    "cyc_frobenius",
    "cyc_mul",
    "cyclotomic_polynomial",
    "fermat_quotient",
    "prime_factors",
    "val_p",
]


class ConfigMismatch(ValueError):
    pass


def prime_factors(n: int) -> set[int]:
    n = abs(n)
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den is monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients (lowest degree first) of the N-th cyclotomic polynomial.

    Obtained from ``x^N - 1`` by exact division by every ``Phi_d``, ``d | N``,
    ``d < N``.
    """
    if N < 1:
        raise ValueError("N must be positive")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@dataclass(frozen=True)
class RingConfig:
    """The ring A = Z[1/M, zeta_N]; M must be even."""

    M: int = 2
    N: int = 1
    phiN: int = field(init=False)

    def __post_init__(self):
        if self.M <= 0 or self.M % 2:
            raise ValueError(f"M must be an even positive integer, got {self.M}")
        if self.N < 1:
            raise ValueError(f"N must be positive, got {self.N}")
        object.__setattr__(self, "phiN", len(cyclotomic_polynomial(self.N)) - 1)

    # -- ring interface -------------------------------------------------
    @property
    def zero(self) -> CycScalar:
        return CycScalar.from_rational(0, self)

    @property
    def one(self) -> CycScalar:
        return CycScalar.from_rational(1, self)

    @property
    def z(self) -> CycScalar:
        return self.zeta_power(1)

    def zeta_power(self, k: int) -> CycScalar:
        return CycScalar(_reduced_power(self.N, k % self.N), self)

    def coerce(self, x) -> CycScalar:
        if isinstance(x, CycScalar):
            if x.config != self:
                raise ConfigMismatch(f"{x.config} vs {self}")
            return x
        if isinstance(x, str):
            return CycScalar.parse(x, self)
        return CycScalar.from_rational(x, self)

    def frobenius(self, a: CycScalar, p: int) -> CycScalar:
        return cyc_frobenius(a, p)

    def galois_power(self, a: CycScalar, e: int) -> CycScalar:
        """``z -> z^e`` for any e prime to N (composite of Frobenius maps)."""
        return _galois(a, e)

    def inv(self, a: CycScalar) -> CycScalar:
        return a.inverse()

    def val(self, a: CycScalar, p: int):
        return val_p(a, p)

    def in_A(self, a: CycScalar) -> bool:
        allowed = prime_factors(self.M)
        return all(prime_factors(int(c.denominator)) <= allowed for c in a.coords)

    def fmt(self, a: CycScalar) -> str:
        return str(a)

    def parse(self, s: str) -> CycScalar:
        return CycScalar.parse(s, self)

    def check_prime(self, p: int) -> None:
        if (self.M * self.N) % p == 0:
            raise ValueError(f"p={p} divides M*N={self.M * self.N}")


@dataclass(frozen=True)
class RationalRing:
    """Fast path for N = 1: elements are plain rationals (``mpq``)."""

    M: int = 2
    N: int = field(default=1, init=False)

    def __post_init__(self):
        if self.M <= 0 or self.M % 2:
            raise ValueError(f"M must be an even positive integer, got {self.M}")

    zero = QQ(0)
    one = QQ(1)

    def coerce(self, x):
        if isinstance(x, str):
            return qq(x)
        if isinstance(x, CycScalar):
            if x.config.phiN != 1:
                raise ConfigMismatch("cyclotomic element in the rational ring")
            return x.coords[0]
        return qq(x)

    def frobenius(self, a, p: int):
        return a

    def galois_power(self, a, e: int):
        return a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def val(self, a, p: int):
        return val_rational(a, p)

    def in_A(self, a) -> bool:
        return prime_factors(int(a.denominator)) <= prime_factors(self.M)

    def fmt(self, a) -> str:
        return fmt_rational(a)

    def parse(self, s: str):
        return qq(s)

    def check_prime(self, p: int) -> None:
        if self.M % p == 0:
            raise ValueError(f"p={p} divides M={self.M}")


@lru_cache(maxsize=None)
def _reduction_table(N: int) -> tuple[tuple, ...]:
    """Power-basis coordinates of z^k for 0 <= k < max(N, 2*phiN - 1)."""
    phi = cyclotomic_polynomial(N)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(max(2 * d - 1, N, 1)):
        rows.append(tuple(cur))
        # multiply by z, then reduce z^d = -sum phi_i z^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


@lru_cache(maxsize=None)
def _reduced_power(N: int, k: int) -> tuple:
    return tuple(QQ(c) for c in _reduction_table(N)[k % N])


def _galois(a: CycScalar, e: int) -> CycScalar:
    N = a.config.N
    if N == 1:
        return a
    if gcd(e, N) != 1:
        raise ValueError(f"exponent {e} not prime to N={N}")
    acc = [QQ(0)] * a.config.phiN
    for i, c in enumerate(a.coords):
        if c:
            for j, b in enumerate(_reduced_power(N, (i * e) % N)):
                if b:
                    acc[j] += c * b
    return CycScalar(tuple(acc), a.config)


_TERM = re.compile(r"^([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(z(?:\^(\d+))?)?$")


class CycScalar:
    """Element of Z[1/M, zeta_N] in the reduced power basis."""

    __slots__ = ("coords", "config")

    def __init__(self, coords, config: RingConfig):
        coords = tuple(qq(c) for c in coords)
        if len(coords) != config.phiN:
            raise ValueError(f"expected {config.phiN} coordinates, got {len(coords)}")
        self.coords = coords
        self.config = config

    @classmethod
    def from_rational(cls, x, config: RingConfig) -> CycScalar:
        return cls((qq(x),) + (QQ(0),) * (config.phiN - 1), config)

    @classmethod
    def parse(cls, s: str, config: RingConfig) -> CycScalar:
        """Parse ``"c0 + c1*z + c2*z^2"``; exponents >= phiN are reduced."""
        text = s.replace(" ", "")
        if not text:
            raise ValueError("empty scalar")
        pieces = re.findall(r"[+-]?[^+-]+", text)
        acc = config.zero
        for piece in pieces:
            m = _TERM.match(piece)
            if m is None or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse term {piece!r} in {s!r}")
            sign, coef, zpart, exp = m.groups()
            c = qq(coef) if coef else QQ(1)
            if sign == "-":
                c = -c
            k = 0 if zpart is None else int(exp or 1)
            acc = acc + config.zeta_power(k) * c
        return acc

    def __repr__(self) -> str:
        return f"CycScalar({str(self)!r}, N={self.config.N})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                parts.append(fmt_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{fmt_rational(c)}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for part in parts[1:]:
            out += " - " + part[1:] if part.startswith("-") else " + " + part
        return out

    def _check(self, other: CycScalar) -> None:
        if other.config != self.config:
            raise ConfigMismatch(f"{self.config} vs {other.config}")

    def _lift(self, other):
        if isinstance(other, CycScalar):
            self._check(other)
            return other
        if isinstance(other, RATIONAL_TYPES):
            return CycScalar.from_rational(other, self.config)
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._lift(other) if not isinstance(other, CycScalar) else other
        if other is NotImplemented:
            return NotImplemented
        return self.config == other.config and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.coords, self.config))

    def __bool__(self) -> bool:
        return any(self.coords)

    def __neg__(self) -> CycScalar:
        return CycScalar(tuple(-c for c in self.coords), self.config)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return CycScalar(tuple(a + b for a, b in zip(self.coords, other.coords)), self.config)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return CycScalar(tuple(a - b for a, b in zip(self.coords, other.coords)), self.config)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            c = qq(other)
            return CycScalar(tuple(a * c for a in self.coords), self.config)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return cyc_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CycScalar:
        if e < 0:
            return self.inverse() ** (-e)
        acc, base = self.config.one, self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __truediv__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return self * (1 / qq(other))
        return self * other.inverse()

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def inverse(self) -> CycScalar:
        """Inverse in Q(zeta_N), by solving the multiplication-matrix system."""
        if not self:
            raise ZeroDivisionError("inverse of zero")
        d = self.config.phiN
        # column j = coords of self * z^j
        cols = [(self * self.config.zeta_power(j)).coords for j in range(d)]
        rows = [[cols[j][i] for j in range(d)] + [QQ(1 if i == 0 else 0)] for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if rows[r][c])
            rows[c], rows[piv] = rows[piv], rows[c]
            inv = 1 / rows[c][c]
            rows[c] = [x * inv for x in rows[c]]
            for r in range(d):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return CycScalar(tuple(row[-1] for row in rows), self.config)


def cyc_mul(a: CycScalar, b: CycScalar) -> CycScalar:
    """Product reduced modulo the cyclotomic polynomial."""
    if a.config != b.config:
        raise ConfigMismatch(f"{a.config} vs {b.config}")
    d = a.config.phiN
    if d == 1:
        return CycScalar((a.coords[0] * b.coords[0],), a.config)
    raw = [QQ(0)] * (2 * d - 1)
    for i, x in enumerate(a.coords):
        if x:
            for j, y in enumerate(b.coords):
                if y:
                    raw[i + j] += x * y
    table = _reduction_table(a.config.N)
    out = [QQ(0)] * d
    for k, c in enumerate(raw):
        if c:
            for i, t in enumerate(table[k]):
                if t:
                    out[i] += c * t
    return CycScalar(tuple(out), a.config)


def cyc_frobenius(a: CycScalar, p: int) -> CycScalar:
    """The Galois action sigma_p: z -> z^p, identity on rationals."""
    if (a.config.M * a.config.N) % p == 0:
        raise ValueError(f"p={p} divides M*N={a.config.M * a.config.N}")
    return _galois(a, p)


def fermat_quotient(a: CycScalar, p: int) -> CycScalar:
    """delta_p(a) = (sigma_p(a) - a^p) / p, so that sigma_p(a) = a^p + p*delta_p(a)."""
    return (cyc_frobenius(a, p) - a ** p) * QQ(1, p)


def val_p(a, p: int):
    """p-adic valuation: minimum over power-basis coordinates, inf for zero."""
    if isinstance(a, CycScalar):
        return min(val_rational(c, p) for c in a.coords)
    return val_rational(qq(a), p)
