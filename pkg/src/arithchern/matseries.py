"""n x n matrices over truncated series."""

from __future__ import annotations

from functools import lru_cache

from ._rational import QQ, qq
from .padics import PadicScalar
from .series import Series, ShapeMismatch, Substitution

__all__ = [
    "SeriesMatrix",
    "binomial_coefficient",
    "binomial_power",
    "constant_inverse",
    "entrywise_power_p",
    "mat_inverse",
    "mat_mul",
]


class SeriesMatrix:
    __slots__ = ("n", "entries")

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ShapeMismatch("series matrix must be square and non-empty")
        first = rows[0][0]
        for r in rows:
            for e in r:
                first._check(e)
        self.n = n
        self.entries = rows

    # -- constructors -------------------------------------------------------
    @classmethod
    def identity(cls, ring, n: int, arity: int, order: int) -> SeriesMatrix:
        return cls.scalar(ring, n, arity, order, 1)

    @classmethod
    def scalar(cls, ring, n: int, arity: int, order: int, c) -> SeriesMatrix:
        zero = Series(ring, arity, order)
        diag = Series.const(ring, arity, order, c)
        return cls([[diag if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def constant(cls, ring, rows, arity: int, order: int) -> SeriesMatrix:
        return cls([[Series.const(ring, arity, order, c) for c in row] for row in rows])

    @classmethod
    def generic(cls, ring, n: int, order: int) -> SeriesMatrix:
        """The matrix T = (T_ij) of n^2 independent variables (row-major)."""
        m = n * n
        return cls([[Series.var(ring, m, order, i * n + j) for j in range(n)] for i in range(n)])

    # -- views ----------------------------------------------------------------
    @property
    def ring(self):
        return self.entries[0][0].ring

    @property
    def arity(self) -> int:
        return self.entries[0][0].arity

    @property
    def order(self) -> int:
        return self.entries[0][0].order

    def __getitem__(self, ij) -> Series:
        i, j = ij
        return self.entries[i][j]

    def __iter__(self):
        for row in self.entries:
            yield from row

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __repr__(self) -> str:
        rows = "; ".join(", ".join(e.render() for e in row) for row in self.entries)
        return f"SeriesMatrix([{rows}])"

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self)

    def constant_part(self) -> list[list]:
        return [[e.constant_term() for e in row] for row in self.entries]

    def leading_degree(self) -> int | None:
        degs = [d for d in (e.leading_degree() for e in self) if d is not None]
        return min(degs) if degs else None

    def first_difference(self, other: SeriesMatrix):
        """First (i, j, exponents, lhs, rhs) where the matrices differ, else None."""
        if self.n != other.n:
            raise ShapeMismatch("dimension mismatch")
        for i in range(self.n):
            for j in range(self.n):
                d = self.entries[i][j] - other.entries[i][j]
                if d:
                    exps, _ = d.first_term()
                    return (i, j, exps, self.entries[i][j].coeff(exps), other.entries[i][j].coeff(exps))
        return None

    # -- arithmetic -----------------------------------------------------------
    def map(self, fn) -> SeriesMatrix:
        return SeriesMatrix([[fn(e) for e in row] for row in self.entries])

    def _zip(self, other: SeriesMatrix, fn) -> SeriesMatrix:
        if self.n != other.n:
            raise ShapeMismatch(f"dimension mismatch {self.n} vs {other.n}")
        return SeriesMatrix(
            [[fn(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __add__(self, other: SeriesMatrix) -> SeriesMatrix:
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: SeriesMatrix) -> SeriesMatrix:
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> SeriesMatrix:
        return self.map(lambda e: -e)

    def scale(self, c) -> SeriesMatrix:
        return self.map(lambda e: e.scale(c))

    def scale_series(self, s: Series) -> SeriesMatrix:
        return self.map(lambda e: e * s)

    def __matmul__(self, other: SeriesMatrix) -> SeriesMatrix:
        return mat_mul(self, other)

    def transpose(self) -> SeriesMatrix:
        n = self.n
        return SeriesMatrix([[self.entries[j][i] for j in range(n)] for i in range(n)])

    @property
    def T(self) -> SeriesMatrix:
        return self.transpose()

    def truncate(self, order: int) -> SeriesMatrix:
        return self.map(lambda e: e.truncate(order))

    def minus_identity(self) -> SeriesMatrix:
        return self - SeriesMatrix.identity(self.ring, self.n, self.arity, self.order)

    def plus_identity(self) -> SeriesMatrix:
        return self + SeriesMatrix.identity(self.ring, self.n, self.arity, self.order)

    def substitute(self, sub: Substitution) -> SeriesMatrix:
        return self.map(sub)


def mat_mul(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    if a.n != b.n:
        raise ShapeMismatch(f"dimension mismatch {a.n} vs {b.n}")
    a[0, 0]._check(b[0, 0])
    n = a.n
    zero = a[0, 0].zero()
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                x, y = a.entries[i][k], b.entries[k][j]
                if x.terms and y.terms:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return SeriesMatrix(out)


def entrywise_power_p(a: SeriesMatrix, p: int) -> SeriesMatrix:
    """The matrix a^(p): every entry raised to the p-th power."""
    return a.map(lambda e: e ** p)


def _pivot_key(x):
    if isinstance(x, PadicScalar):
        return x.val
    return 0


def constant_inverse(rows: list[list], ring) -> list[list]:
    """Gauss-Jordan inverse of a constant matrix over the coefficient field."""
    n = len(rows)
    work = [
        [ring.coerce(x) for x in row] + [ring.coerce(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(rows)
    ]
    for c in range(n):
        candidates = [r for r in range(c, n) if work[r][c]]
        if not candidates:
            raise ZeroDivisionError("singular constant term")
        piv = min(candidates, key=lambda r: _pivot_key(work[r][c]))
        work[c], work[piv] = work[piv], work[c]
        inv = ring.inv(work[c][c])
        work[c] = [x * inv for x in work[c]]
        for r in range(n):
            if r != c and work[r][c]:
                f = work[r][c]
                work[r] = [x - f * y for x, y in zip(work[r], work[c])]
    return [row[n:] for row in work]


def mat_inverse(a: SeriesMatrix) -> SeriesMatrix:
    """Inverse via A = A0 (1 + E), A^-1 = (sum_i (-E)^i) A0^-1."""
    ring, arity, order = a.ring, a.arity, a.order
    a0inv = SeriesMatrix.constant(ring, constant_inverse(a.constant_part(), ring), arity, order)
    e = (a0inv @ a).minus_identity()
    if any(0 in x.terms for x in e):
        raise ArithmeticError("normalised error term has a constant part")
    acc = SeriesMatrix.identity(ring, a.n, arity, order)
    power = acc
    neg_e = -e
    for _ in range(order):
        power = power @ neg_e
        if power.is_zero():
            break
        acc = acc + power
    return acc @ a0inv


@lru_cache(maxsize=None)
def binomial_coefficient(s, i: int):
    """Generalised binomial coefficient C(s, i) for rational s."""
    s = qq(s)
    if i < 0:
        return QQ(0)
    if i == 0:
        return QQ(1)
    return binomial_coefficient(s, i - 1) * (s - (i - 1)) / i


def binomial_power(u: SeriesMatrix, s, terms: int | None = None) -> SeriesMatrix:
    """(1 + u)^s = sum_i C(s, i) u^i.

    With ``terms=None`` every entry of ``u`` must have zero constant term and
    the sum stops at ``i = order`` (u^i lies in (T)^i).  Callers that know
    convergence another way (p-adically small ``u``) pass an explicit number
    of terms instead.
    """
    s = qq(s)
    if terms is None:
        if any(0 in e.terms for e in u):
            raise ValueError("binomial series needs u with zero constant term")
        terms = u.order + 1
    ring, arity, order = u.ring, u.arity, u.order
    acc = SeriesMatrix.identity(ring, u.n, arity, order)
    power = acc
    for i in range(1, terms):
        power = power @ u
        if power.is_zero():
            break
        acc = acc + power.scale(binomial_coefficient(s, i))
    return acc


def binomial_power_series(f: Series, s, terms: int | None = None) -> Series:
    """Scalar version of :func:`binomial_power`: (1 + f)^s."""
    s = qq(s)
    if terms is None:
        if 0 in f.terms:
            raise ValueError("binomial series needs f with zero constant term")
        terms = f.order + 1
    acc = f.one()
    power = acc
    for i in range(1, terms):
        power = power * f
        if power.is_zero():
            break
        acc = acc + power.scale(binomial_coefficient(s, i))
    return acc
