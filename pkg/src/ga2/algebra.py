"""Exact scalars and polynomials over the rationals and prime fields.

Polynomials keep their coefficients as *raw* values (``Fraction`` over Q,
``int`` in ``[0, p)`` over F_p) for speed; :class:`Scalar` wraps a raw value
with its field for the public API.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import (CharacteristicTwo, InvalidField, DivisionByZero, FieldMismatch,
                     ZeroInput, ZeroPolynomial)


class _Infinite:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Infinite"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


class _Unknown:
    def __repr__(self):
        return "Unknown"

    __str__ = __repr__

    def __reduce__(self):
        return "UNKNOWN"


UNKNOWN = _Unknown()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True)
class FieldCtx:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise InvalidField(f"{self.p} is not prime")

    @classmethod
    def rationals(cls):
        return cls(0)

    @classmethod
    def prime(cls, p: int):
        return cls(p)

    @classmethod
    def parse(cls, spec: str):
        """``Q`` or ``Fp:7``."""
        s = spec.strip()
        if s in ("Q", "QQ"):
            return cls(0)
        if s.startswith("Fp:") or s.startswith("F:"):
            digits = s.split(":", 1)[1]
            if not digits.isdigit() or int(digits) < 2:
                raise InvalidField(f"bad prime {digits!r}")
            return cls(int(digits))
        raise InvalidField(f"unknown field spec {spec!r}; use Q or Fp:<prime>")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def kind(self) -> str:
        return "Rationals" if self.p == 0 else f"PrimeField({self.p})"

    def __str__(self):
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    # raw value helpers --------------------------------------------------
    def raw(self, value):
        """Normalise ``value`` (int, Fraction, str or Scalar) to a raw field value."""
        if isinstance(value, Scalar):
            if value.ctx != self:
                raise FieldMismatch(f"scalar over {value.ctx} used over {self}")
            return value.value
        if isinstance(value, str):
            value = Fraction(value)
        if self.p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"denominator {value.denominator} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def norm(self, raw):
        return raw % self.p if self.p else raw

    def inv_raw(self, raw):
        if raw == 0:
            raise DivisionByZero("inverse of zero")
        if self.p:
            return pow(raw, -1, self.p)
        return 1 / raw

    def __call__(self, value) -> "Scalar":
        return Scalar(self.raw(value), self)

    @property
    def zero(self) -> "Scalar":
        return Scalar(self.raw(0), self)

    @property
    def one(self) -> "Scalar":
        return Scalar(self.raw(1), self)

    def elements(self):
        if not self.p:
            raise ValueError("Q is infinite")
        return [Scalar(i, self) for i in range(self.p)]

    def random(self, rng: random.Random, height: int = 5, nonzero=False) -> "Scalar":
        while True:
            if self.p:
                s = self(rng.randrange(self.p))
            else:
                s = self(Fraction(rng.randint(-height, height), rng.randint(1, height)))
            if not (nonzero and s.is_zero()):
                return s

    def format_raw(self, raw) -> str:
        if self.p:
            return str(raw)
        if raw.denominator == 1:
            return str(raw.numerator)
        return f"{raw.numerator}/{raw.denominator}"


class Scalar:
    __slots__ = ("value", "ctx")

    def __init__(self, value, ctx: FieldCtx):
        self.value = value
        self.ctx = ctx

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.ctx != self.ctx:
                raise FieldMismatch(f"{self.ctx} vs {other.ctx}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.ctx.raw(other)
        return None

    def _wrap(self, raw):
        return Scalar(self.ctx.norm(raw), self.ctx)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.value * self.ctx.inv_raw(o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._wrap(o * self.ctx.inv_raw(self.value))

    def __neg__(self):
        return self._wrap(-self.value)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self.ctx.p:
            return Scalar(pow(self.value, n, self.ctx.p), self.ctx)
        return Scalar(self.value ** n, self.ctx)

    def inverse(self):
        return Scalar(self.ctx.inv_raw(self.value), self.ctx)

    def is_zero(self):
        return self.value == 0

    def is_one(self):
        return self.value == 1

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.ctx.raw(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Scalar({self}, {self.ctx})"

    def __str__(self):
        return self.ctx.format_raw(self.value)


def field_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if a.ctx != b.ctx:
        raise FieldMismatch(f"{a.ctx} vs {b.ctx}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def _divisors(n):
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def mult_order(u: Scalar):
    """Multiplicative order of ``u``; ``INFINITE`` for non-roots of unity over Q."""
    if u.is_zero():
        raise ZeroInput("order of zero")
    p = u.ctx.p
    if p == 0:
        if u.value == 1:
            return 1
        if u.value == -1:
            return 2
        return INFINITE
    for d in _divisors(p - 1):
        if pow(u.value, d, p) == 1:
            return d
    raise AssertionError("unreachable")


def has_primitive_fourth_root(ctx: FieldCtx) -> bool:
    return ctx.p != 0 and ctx.p % 4 == 1


def _coeff_str(ctx, raw):
    """(sign, magnitude text) for printing."""
    if ctx.p:
        return "+", str(raw)
    if raw < 0:
        return "-", ctx.format_raw(-raw)
    return "+", ctx.format_raw(raw)


def _render(ctx, items):
    """items: (monomial text, raw coefficient) already in print order."""
    if not items:
        return "0"
    out = []
    for k, (mono, c) in enumerate(items):
        sign, mag = _coeff_str(ctx, c)
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append((" - " if sign == "-" else " + ") + body)
    return "".join(out)


def _mono(var, e):
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


class UniPoly:
    """Dense univariate polynomial, lowest degree first. The variable prints as ``y``."""

    __slots__ = ("coeffs", "ctx")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable = ()):
        raws = [ctx.raw(c) for c in coeffs]
        while raws and raws[-1] == 0:
            raws.pop()
        self.coeffs = tuple(raws)
        self.ctx = ctx

    @classmethod
    def _make(cls, ctx, raws):
        obj = cls.__new__(cls)
        raws = list(raws)
        while raws and raws[-1] == 0:
            raws.pop()
        obj.coeffs = tuple(raws)
        obj.ctx = ctx
        return obj

    @classmethod
    def monomial(cls, ctx, k, c=1):
        return cls(ctx, [0] * k + [c])

    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coeff(self, k) -> Scalar:
        return Scalar(self.coeffs[k] if k < len(self.coeffs) else self.ctx.raw(0), self.ctx)

    def leading(self) -> Scalar:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return Scalar(self.coeffs[-1], self.ctx)

    def _check(self, other):
        if other.ctx != self.ctx:
            raise FieldMismatch(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        norm = self.ctx.norm
        return UniPoly._make(self.ctx, [norm((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0))
                                        for i in range(n)])

    def __neg__(self):
        return UniPoly._make(self.ctx, [self.ctx.norm(-c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            self._check(other)
            if not self.coeffs or not other.coeffs:
                return UniPoly._make(self.ctx, [])
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return UniPoly._make(self.ctx, [self.ctx.norm(c) for c in out])
        c = self.ctx.raw(other)
        return UniPoly._make(self.ctx, [self.ctx.norm(a * c) for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.p, self.coeffs))

    def __call__(self, y):
        """Evaluate at a Scalar (or anything the ctx accepts)."""
        t = self.ctx.raw(y)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return Scalar(self.ctx.norm(self.ctx.raw(0) + acc), self.ctx)

    def compose(self, other: "UniPoly") -> "UniPoly":
        """self(other(y))."""
        self._check(other)
        acc = UniPoly._make(self.ctx, [])
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly._make(self.ctx, [c])
        return acc

    def affine_substitute(self, scale, shift) -> "UniPoly":
        """self(scale*y + shift)."""
        return self.compose(UniPoly(self.ctx, [shift, scale]))

    def of_bipoly(self, F: "BiPoly") -> "BiPoly":
        """self(F(x, y)) by Horner's rule."""
        acc = BiPoly._make(self.ctx, {})
        for c in reversed(self.coeffs):
            acc = acc * F
            if c:
                acc = acc + BiPoly._make(self.ctx, {(0, 0): c})
        return acc

    def reflect(self) -> "UniPoly":
        """P(-y)."""
        return UniPoly._make(self.ctx, [self.ctx.norm(-c) if k % 2 else c
                                        for k, c in enumerate(self.coeffs)])

    def shift_down(self, k) -> "UniPoly":
        """Drop the lowest k coefficients and divide by y^k."""
        return UniPoly._make(self.ctx, self.coeffs[k:])

    def is_odd(self) -> bool:
        return is_odd_poly(self)

    def is_even(self) -> bool:
        if self.ctx.p == 2:
            raise CharacteristicTwo("parity is meaningless in characteristic 2")
        return all(c == 0 for k, c in enumerate(self.coeffs) if k % 2 == 1)

    def to_bipoly(self, var="y") -> "BiPoly":
        if var == "y":
            return BiPoly._make(self.ctx, {(0, k): c for k, c in enumerate(self.coeffs) if c})
        return BiPoly._make(self.ctx, {(k, 0): c for k, c in enumerate(self.coeffs) if c})

    def __str__(self):
        items = [(_mono("y", k), c) for k, c in reversed(list(enumerate(self.coeffs))) if c]
        return _render(self.ctx, items)

    def __repr__(self):
        return f"UniPoly({self})"


class BiPoly:
    """Sparse polynomial in x and y: ``{(i, j): coefficient of x^i y^j}``."""

    __slots__ = ("terms", "ctx")

    def __init__(self, ctx: FieldCtx, terms=None):
        self.ctx = ctx
        self.terms = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            r = ctx.raw(c)
            if r:
                self.terms[(i, j)] = r

    @classmethod
    def _make(cls, ctx, terms):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, ctx, c):
        r = ctx.raw(c)
        return cls._make(ctx, {(0, 0): r} if r else {})

    @classmethod
    def x(cls, ctx):
        return cls._make(ctx, {(1, 0): ctx.raw(1)})

    @classmethod
    def y(cls, ctx):
        return cls._make(ctx, {(0, 1): ctx.raw(1)})

    @classmethod
    def linear(cls, ctx, cx, cy, c0):
        """cx*x + cy*y + c0."""
        return cls(ctx, {(1, 0): cx, (0, 1): cy, (0, 0): c0})

    def _check(self, other):
        if other.ctx != self.ctx:
            raise FieldMismatch(f"{self.ctx} vs {other.ctx}")

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            self._check(other)
            return other
        return BiPoly.constant(self.ctx, other)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0, 0)}

    def constant_term(self) -> Scalar:
        return Scalar(self.terms.get((0, 0), self.ctx.raw(0)), self.ctx)

    def coeff(self, i, j) -> Scalar:
        return Scalar(self.terms.get((i, j), self.ctx.raw(0)), self.ctx)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        norm = self.ctx.norm
        for k, c in other.terms.items():
            v = norm(out.get(k, 0) + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BiPoly._make(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._make(self.ctx, {k: self.ctx.norm(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = self.ctx.raw(other)
            if not c:
                return BiPoly._make(self.ctx, {})
            return BiPoly._make(self.ctx, {k: self.ctx.norm(v * c) for k, v in self.terms.items()})
        self._check(other)
        out = {}
        get = out.get
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = get(key, 0) + a * b
        norm = self.ctx.norm
        res = {}
        for k, v in out.items():
            v = norm(v)
            if v:
                res[k] = v
        return BiPoly._make(self.ctx, res)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = BiPoly.constant(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == BiPoly.constant(self.ctx, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, frozenset(self.terms.items())))

    def total_degree(self) -> int:
        return total_degree(self)

    def degree_in(self, var) -> int:
        idx = 0 if var == "x" else 1
        return max((k[idx] for k in self.terms), default=-1)

    def leading_form(self) -> "BiPoly":
        return leading_form(self)

    def homogeneous_part(self, d) -> "BiPoly":
        return BiPoly._make(self.ctx, {k: c for k, c in self.terms.items() if k[0] + k[1] == d})

    def diff(self, var) -> "BiPoly":
        norm = self.ctx.norm
        out = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i:
                v = norm(c * i)
                if v:
                    out[(i - 1, j)] = v
            elif var == "y" and j:
                v = norm(c * j)
                if v:
                    out[(i, j - 1)] = v
        return BiPoly._make(self.ctx, out)

    def compose(self, P: "BiPoly", Q: "BiPoly") -> "BiPoly":
        return bipoly_compose(self, P, Q)

    def evaluate(self, x, y) -> Scalar:
        X, Y = self.ctx.raw(x), self.ctx.raw(y)
        acc = self.ctx.raw(0)
        for (i, j), c in self.terms.items():
            acc = acc + c * X ** i * Y ** j
        return Scalar(self.ctx.norm(acc), self.ctx)

    def as_unipoly_y(self) -> UniPoly | None:
        """The polynomial as a UniPoly in y, or None if x occurs."""
        if any(i for i, _ in self.terms):
            return None
        d = max((j for _, j in self.terms), default=-1)
        raws = [self.terms.get((0, j), 0) for j in range(d + 1)]
        return UniPoly._make(self.ctx, raws)

    def sorted_terms(self):
        """Terms in canonical print order."""
        return sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def __str__(self):
        items = []
        for (i, j), c in self.sorted_terms():
            mono = "*".join(m for m in (_mono("x", i), _mono("y", j)) if m)
            items.append((mono, c))
        return _render(self.ctx, items)

    def __repr__(self):
        return f"BiPoly({self})"


def bipoly_compose(F: BiPoly, P: BiPoly, Q: BiPoly) -> BiPoly:
    """F(P(x,y), Q(x,y)) expanded."""
    F._check(P)
    F._check(Q)
    ctx = F.ctx
    if not F.terms:
        return BiPoly._make(ctx, {})
    # Horner in x over polynomials in y: F = sum_i x^i F_i(y)
    by_i = {}
    for (i, j), c in F.terms.items():
        by_i.setdefault(i, {})[j] = c
    qpow = {0: BiPoly.constant(ctx, 1)}

    def qp(j):
        if j not in qpow:
            best = max(k for k in qpow if k <= j)
            acc = qpow[best]
            for k in range(best + 1, j + 1):
                acc = acc * Q
                qpow[k] = acc
        return qpow[j]

    def inner(cs):
        acc = BiPoly._make(ctx, {})
        for j, c in cs.items():
            acc = acc + qp(j) * Scalar(c, ctx)
        return acc

    top = max(by_i)
    acc = BiPoly._make(ctx, {})
    for i in range(top, -1, -1):
        acc = acc * P
        if i in by_i:
            acc = acc + inner(by_i[i])
    return acc


def total_degree(F: BiPoly) -> int:
    if not F.terms:
        raise ZeroPolynomial("total degree of the zero polynomial")
    return max(i + j for i, j in F.terms)


def leading_form(F: BiPoly) -> BiPoly:
    return F.homogeneous_part(total_degree(F))


def is_odd_poly(P: UniPoly) -> bool:
    if P.ctx.p == 2:
        raise CharacteristicTwo("parity is meaningless in characteristic 2")
    return all(c == 0 for k, c in enumerate(P.coeffs) if k % 2 == 0)
