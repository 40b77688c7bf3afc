"""Rational number type used throughout the package.

gmpy2's ``mpq`` is roughly an order of magnitude faster than
:class:`fractions.Fraction` for the small-denominator arithmetic done by the
series engine; both are exact and expose ``numerator``/``denominator``.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    QQ = Fraction

RATIONAL_TYPES = (int, Fraction, type(QQ(0)))


def qq(x, d: int = 1):
    """Coerce an int, Fraction, mpq or ``"num/den"`` string to a rational."""
    if isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator * d) if d != 1 else QQ(x.numerator, x.denominator)
    return QQ(x, d) if d != 1 else QQ(x)


def fmt_rational(x) -> str:
    n, d = int(x.numerator), int(x.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def val_rational(x, p: int) -> float | int:
    """p-adic valuation of a rational; ``inf`` for zero."""
    if x == 0:
        return float("inf")
    n, d = int(x.numerator), int(x.denominator)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v
