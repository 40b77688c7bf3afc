"""Sparse truncated multivariate power series.

A :class:`Series` is an element of ``R[[T_1..T_m]] / (T)^(order+1)`` for a
coefficient ring ``R`` (see :mod:`arithchern.scalars` and
:mod:`arithchern.padics` for the ring adaptors).  Terms live in a dict keyed
by packed exponent vectors: eight bits per variable, with the total degree
stored in the byte above the last variable.  Adding two keys therefore
multiplies the monomials and adds their degrees in one integer addition.
"""

from __future__ import annotations

from itertools import accumulate

from ._rational import QQ, RATIONAL_TYPES, qq

__all__ = [
    "DivisibilityViolation",
    "Series",
    "ShapeMismatch",
    "Substitution",
    "coeff",
    "default_names",
    "div_exact_int",
    "galois_map",
    "mul_trunc",
    "substitute",
]

MAX_ARITY = 64
MAX_EXP = 255
_BITS = 8
_MASK = (1 << _BITS) - 1


class ShapeMismatch(ValueError):
    pass


class DivisibilityViolation(ArithmeticError):
    """A coefficient failed the p-adic divisibility certificate."""

    def __init__(self, p: int, exponents: tuple, coefficient=None):
        self.p = p
        self.exponents = exponents
        self.coefficient = coefficient
        super().__init__(f"coefficient of {exponents} not divisible by {p}: {coefficient}")


def pack(exps) -> int:
    key = 0
    deg = 0
    for i, e in enumerate(exps):
        if e:
            if e < 0 or e > MAX_EXP:
                raise ValueError(f"exponent {e} out of range")
            key |= e << (_BITS * i)
            deg += e
    return key | (deg << (_BITS * len(exps)))


def unpack(key: int, arity: int) -> tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(arity))


def default_names(arity: int) -> list[str]:
    if arity == 2:
        return ["v", "w"]
    if arity == 3:
        return ["u", "v", "w"]
    n = int(round(arity ** 0.5))
    if n * n == arity:
        return [f"T_{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return [f"T{i + 1}" for i in range(arity)]


class Series:
    """Truncated power series; immutable after construction."""

    __slots__ = ("ring", "arity", "order", "terms", "_shift", "_buckets", "_prefix")

    def __init__(self, ring, arity: int, order: int, terms: dict | None = None, *, _clean=False):
        if not 0 <= arity <= MAX_ARITY:
            raise ValueError(f"arity {arity} out of range")
        if not 0 <= order <= MAX_EXP:
            raise ValueError(f"order {order} out of range")
        self.ring = ring
        self.arity = arity
        self.order = order
        self._shift = _BITS * arity
        self._buckets = None
        self._prefix = None
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            shift = self._shift
            self.terms = {k: c for k, c in terms.items() if c and (k >> shift) <= order}

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_dict(cls, ring, arity: int, order: int, data: dict) -> Series:
        terms = {}
        for exps, c in data.items():
            if len(exps) != arity:
                raise ShapeMismatch(f"exponent {exps} has wrong arity")
            if sum(exps) <= order:
                c = ring.coerce(c)
                if c:
                    terms[pack(exps)] = c
        return cls(ring, arity, order, terms, _clean=True)

    @classmethod
    def const(cls, ring, arity: int, order: int, c=1) -> Series:
        c = ring.coerce(c)
        return cls(ring, arity, order, {pack((0,) * arity): c} if c else {}, _clean=True)

    @classmethod
    def var(cls, ring, arity: int, order: int, i: int, c=1) -> Series:
        e = [0] * arity
        e[i] = 1
        return cls.from_dict(ring, arity, order, {tuple(e): c})

    def zero(self) -> Series:
        return Series(self.ring, self.arity, self.order, {}, _clean=True)

    def one(self) -> Series:
        return Series.const(self.ring, self.arity, self.order, 1)

    def _like(self, terms: dict) -> Series:
        return Series(self.ring, self.arity, self.order, terms, _clean=True)

    # -- inspection -------------------------------------------------------
    def degree_of(self, key: int) -> int:
        return key >> self._shift

    def items(self):
        """(exponent tuple, coefficient) pairs in graded order."""
        out = [(unpack(k, self.arity), c) for k, c in self.terms.items()]
        out.sort(key=lambda t: (sum(t[0]), tuple(-e for e in t[0])))
        return out

    def coeff(self, exps):
        return coeff(self, exps)

    def constant_term(self):
        return self.terms.get(0, self.ring.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def leading_degree(self) -> int | None:
        if not self.terms:
            return None
        return min(k >> self._shift for k in self.terms)

    def max_degree(self) -> int | None:
        if not self.terms:
            return None
        return max(k >> self._shift for k in self.terms)

    def first_term(self):
        """Lowest term in graded order, or None."""
        items = self.items()
        return items[0] if items else None

    def _check(self, other: Series) -> None:
        if (self.arity, self.order) != (other.arity, other.order) or self.ring != other.ring:
            raise ShapeMismatch(
                f"series shapes differ: arity {self.arity}/{other.arity}, "
                f"order {self.order}/{other.order}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.order == other.order
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.arity, self.order, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def __repr__(self) -> str:
        return f"Series({self.render()}, order={self.order})"

    def render(self, names: list[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.items():
            mono = monomial_name(exps, names or default_names(self.arity))
            cs = self.ring.fmt(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            elif " " in cs:
                parts.append(f"({cs})*{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for part in parts[1:]:
            out += " - " + part[1:] if part.startswith("-") else " + " + part
        return out

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> Series:
        return self._like({k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, Series):
            return self + Series.const(self.ring, self.arity, self.order, other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                s = v + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return self._like(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Series):
            return self + (-self.ring.coerce(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Series:
        if isinstance(c, RATIONAL_TYPES):
            c = qq(c)
        out = {}
        for k, v in self.terms.items():
            w = v * c
            if w:
                out[k] = w
        return self._like(out)

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul_trunc(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int) -> Series:
        if e < 0:
            raise ValueError("negative powers are not series operations")
        acc = self.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise ShapeMismatch(f"cannot raise order {self.order} to {order}")
        shift = self._shift
        return Series(
            self.ring,
            self.arity,
            order,
            {k: c for k, c in self.terms.items() if (k >> shift) <= order},
            _clean=True,
        )

    def homogeneous_part(self, d: int) -> Series:
        shift = self._shift
        return self._like({k: c for k, c in self.terms.items() if (k >> shift) == d})

    def map_coefficients(self, fn) -> Series:
        out = {}
        for k, c in self.terms.items():
            w = fn(c)
            if w:
                out[k] = w
        return self._like(out)

    def with_ring(self, ring, fn=None) -> Series:
        """Re-home the coefficients into another ring (e.g. Q -> Q_p)."""
        fn = fn or ring.coerce
        out = {}
        for k, c in self.terms.items():
            w = fn(c)
            if w:
                out[k] = w
        return Series(ring, self.arity, self.order, out, _clean=True)

    # -- internals for the product ---------------------------------------
    def _degree_prefix(self) -> list[list]:
        """prefix[d] = all terms of degree <= d."""
        if self._prefix is None:
            buckets = [[] for _ in range(self.order + 1)]
            shift = self._shift
            for k, c in self.terms.items():
                buckets[k >> shift].append((k, c))
            self._buckets = buckets
            self._prefix = list(accumulate(buckets, lambda a, b: a + b))
        return self._prefix


def monomial_name(exps, names) -> str:
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def mul_trunc(f: Series, g: Series) -> Series:
    """Product of two series with all terms of degree > order discarded."""
    f._check(g)
    if not f.terms or not g.terms:
        return f.zero()
    nu = f.order
    if len(f.terms) > len(g.terms):
        f, g = g, f
    f._degree_prefix()
    prefix = g._degree_prefix()
    out: dict = {}
    get = out.get
    for d1, bucket in enumerate(f._buckets):
        if not bucket:
            continue
        partners = prefix[nu - d1]
        if not partners:
            continue
        for k1, c1 in bucket:
            for k2, c2 in partners:
                k = k1 + k2
                v = get(k)
                if v is None:
                    out[k] = c1 * c2
                else:
                    out[k] = v + c1 * c2
    return f._like({k: c for k, c in out.items() if c})


def coeff(f: Series, exps):
    """Stored coefficient at the given multi-index, or zero."""
    exps = tuple(exps)
    if len(exps) != f.arity:
        raise ShapeMismatch(f"multi-index {exps} has wrong arity for {f.arity} variables")
    if sum(exps) > f.order:
        raise ValueError(f"degree {sum(exps)} exceeds truncation order {f.order}")
    return f.terms.get(pack(exps), f.ring.zero)


def galois_map(f: Series, p: int) -> Series:
    """Apply sigma_p to every coefficient."""
    return f.map_coefficients(lambda c: f.ring.frobenius(c, p))


class Substitution:
    """The ring map ``T_i -> images[i]``, memoised over monomials.

    Every image must have zero constant term so that (T)^d maps into (T)^d
    and truncation commutes with substitution.  The memo makes repeated
    application (e.g. to all n^2 entries of a matrix) share monomial powers.
    """

    def __init__(self, images: list[Series]):
        if not images:
            raise ValueError("need at least one image")
        first = images[0]
        for img in images:
            first._check(img)
            if 0 in img.terms:
                raise ValueError("substitution image has a nonzero constant term")
        self.images = list(images)
        self.target = first
        self._memo: dict[int, Series] = {}

    def monomial(self, exps: tuple[int, ...]) -> Series:
        key = pack(exps)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not any(exps):
            val = self.target.one()
        else:
            j = max(i for i, e in enumerate(exps) if e)
            prev = list(exps)
            prev[j] -= 1
            val = self.monomial(tuple(prev)) * self.images[j]
        self._memo[key] = val
        return val

    def __call__(self, f: Series) -> Series:
        if f.arity != len(self.images):
            raise ShapeMismatch(f"{len(self.images)} images for {f.arity} variables")
        target = self.target
        nu = target.order
        out: dict = {}
        for k, c in f.terms.items():
            if (k >> f._shift) > nu:
                continue  # lands in (T)^(nu+1)
            c = target.ring.coerce(c) if f.ring != target.ring else c
            for k2, c2 in self.monomial(unpack(k, f.arity)).terms.items():
                v = out.get(k2)
                w = c * c2
                out[k2] = w if v is None else v + w
        return target._like({k: c for k, c in out.items() if c})


def substitute(f: Series, images: list[Series]) -> Series:
    return Substitution(images)(f)


def div_exact_int(f: Series, d: int, p_witnesses) -> Series:
    """f / d, after certifying p-adic divisibility for each witness prime.

    The division itself would succeed over Q regardless; the certificate is
    the point.  Raises :class:`DivisibilityViolation` on the first offending
    coefficient in graded order.
    """
    if d == 0:
        raise ZeroDivisionError("division by zero")
    need = {}
    for p in sorted(set(p_witnesses)):
        m, r = 0, abs(d)
        while r % p == 0:
            r //= p
            m += 1
        if m:
            need[p] = m
    ring = f.ring
    for exps, c in f.items():
        for p, m in need.items():
            if ring.val(c, p) < m:
                raise DivisibilityViolation(p, exps, ring.fmt(c))
    return f.scale(QQ(1, d))
