"""Polynomial maps of the plane and the generator letters.

Composition convention everywhere: ``compose(f, g)`` (also ``f @ g``) applies
``g`` first and then ``f``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import BiPoly, FieldCtx, Scalar, UniPoly, bipoly_compose
from .errors import FieldMismatch, Singular


@dataclass(frozen=True)
class Matrix2:
    """2x2 matrix ``[[a, b], [c, d]]`` of Scalars."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    @classmethod
    def of(cls, ctx: FieldCtx, rows):
        (a, b), (c, d) = rows
        return cls(ctx(a), ctx(b), ctx(c), ctx(d))

    @classmethod
    def identity(cls, ctx):
        return cls.of(ctx, ((1, 0), (0, 1)))

    @property
    def ctx(self):
        return self.a.ctx

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, o: "Matrix2") -> "Matrix2":
        return Matrix2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                       self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def apply(self, vec):
        x, y = vec
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Scalar:
        return self.a + self.d

    def inverse(self) -> "Matrix2":
        det = self.det()
        if det.is_zero():
            raise Singular("matrix is not invertible")
        return Matrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def scale(self, s) -> "Matrix2":
        return Matrix2(self.a * s, self.b * s, self.c * s, self.d * s)

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, o):
        return Matrix2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o):
        return self + (-o)

    def is_scalar(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def is_identity(self) -> bool:
        return self.is_scalar() and self.a.is_one()

    def __pow__(self, n):
        result = Matrix2.identity(self.ctx)
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


@dataclass(frozen=True)
class PolyMap:
    """``(x, y) -> (P(x, y), Q(x, y))``; no automorphism guarantee."""

    P: BiPoly
    Q: BiPoly

    def __post_init__(self):
        if self.P.ctx != self.Q.ctx:
            raise FieldMismatch("components over different fields")

    @property
    def ctx(self) -> FieldCtx:
        return self.P.ctx

    @classmethod
    def identity(cls, ctx):
        return cls(BiPoly.x(ctx), BiPoly.y(ctx))

    def is_identity(self):
        return self == PolyMap.identity(self.ctx)

    def compose(self, g: "PolyMap") -> "PolyMap":
        return compose(self, g)

    def __matmul__(self, g):
        return compose(self, g)

    def __call__(self, pt):
        return apply(self, pt)

    def degree(self) -> int:
        return max((i + j for F in (self.P, self.Q) for i, j in F.terms), default=0)

    def jacobian_det(self) -> BiPoly:
        return jacobian_det(self)

    def jacobian_at(self, pt) -> Matrix2:
        x, y = pt
        return Matrix2(self.P.diff("x").evaluate(x, y), self.P.diff("y").evaluate(x, y),
                       self.Q.diff("x").evaluate(x, y), self.Q.diff("y").evaluate(x, y))

    def to_polymap(self):
        return self

    def __str__(self):
        return f"({self.P}, {self.Q})"


def compose(f: PolyMap, g: PolyMap) -> PolyMap:
    """The map ``f o g``: apply g, then f."""
    if f.ctx != g.ctx:
        raise FieldMismatch(f"{f.ctx} vs {g.ctx}")
    return PolyMap(bipoly_compose(f.P, g.P, g.Q), bipoly_compose(f.Q, g.P, g.Q))


def apply(f: PolyMap, pt):
    x, y = pt
    for s in (x, y):
        if isinstance(s, Scalar) and s.ctx != f.ctx:
            raise FieldMismatch(f"point over {s.ctx}, map over {f.ctx}")
    return (f.P.evaluate(x, y), f.Q.evaluate(x, y))


def jacobian_det(f: PolyMap) -> BiPoly:
    return f.P.diff("x") * f.Q.diff("y") - f.P.diff("y") * f.Q.diff("x")


# --- letters -------------------------------------------------------------

class _Letter:
    def __matmul__(self, other):
        return self.polymap @ other.to_polymap()

    def to_polymap(self) -> PolyMap:
        return self.polymap

    @cached_property
    def polymap(self) -> PolyMap:
        return self._expand()


@dataclass(frozen=True)
class AffineMap(_Letter):
    """x -> M x + a."""

    a: tuple
    M: Matrix2
    factor = "A"

    def __post_init__(self):
        if self.M.det().is_zero():
            raise Singular("affine map with singular matrix")

    @classmethod
    def of(cls, ctx, a, rows):
        return cls((ctx(a[0]), ctx(a[1])), Matrix2.of(ctx, rows))

    @classmethod
    def linear(cls, M: Matrix2):
        return cls((M.ctx.zero, M.ctx.zero), M)

    @property
    def ctx(self):
        return self.M.ctx

    def _expand(self):
        M, (u, v) = self.M, self.a
        return PolyMap(BiPoly.linear(self.ctx, M.a, M.b, u), BiPoly.linear(self.ctx, M.c, M.d, v))

    def compose(self, o: "AffineMap") -> "AffineMap":
        """(a, A)(b, B) = (a + A b, A B)."""
        t = self.M.apply(o.a)
        return AffineMap((self.a[0] + t[0], self.a[1] + t[1]), self.M @ o.M)

    def inverse(self) -> "AffineMap":
        Mi = self.M.inverse()
        t = Mi.apply(self.a)
        return AffineMap((-t[0], -t[1]), Mi)

    def is_basic(self):
        return self.M.c.is_zero()

    def as_basic(self) -> "BasicMap":
        assert self.is_basic()
        return BasicMap(self.M.a, self.M.d, self.M.b, self.a[0], self.a[1])

    def as_affine(self):
        return self

    def det(self):
        return self.M.det()

    def __str__(self):
        return f"AffineMap(a=({self.a[0]}, {self.a[1]}), M={self.M})"


@dataclass(frozen=True)
class ElementaryMap(_Letter):
    """(x, y) -> (alpha x + P(y), beta y + v)."""

    alpha: Scalar
    beta: Scalar
    v: Scalar
    P: UniPoly
    factor = "E"

    def __post_init__(self):
        if (self.alpha * self.beta).is_zero():
            raise Singular("elementary map with alpha*beta = 0")

    @classmethod
    def of(cls, ctx, alpha, beta, v, coeffs):
        return cls(ctx(alpha), ctx(beta), ctx(v), UniPoly(ctx, coeffs))

    @property
    def ctx(self):
        return self.alpha.ctx

    def _expand(self):
        ctx = self.ctx
        return PolyMap(BiPoly.constant(ctx, self.alpha) * BiPoly.x(ctx) + self.P.to_bipoly(),
                       BiPoly.linear(ctx, 0, self.beta, self.v))

    def compose(self, o: "ElementaryMap") -> "ElementaryMap":
        # self(o(x, y)) = (a1 (a2 x + P2(y)) + P1(b2 y + v2), b1 (b2 y + v2) + v1)
        return ElementaryMap(self.alpha * o.alpha, self.beta * o.beta, self.beta * o.v + self.v,
                             o.P * self.alpha + self.P.affine_substitute(o.beta, o.v))

    def inverse(self) -> "ElementaryMap":
        ai, bi = self.alpha.inverse(), self.beta.inverse()
        return ElementaryMap(ai, bi, -self.v * bi, self.P.affine_substitute(bi, -self.v * bi) * (-ai))

    def is_basic(self):
        return self.P.degree() <= 1

    def as_basic(self) -> "BasicMap":
        assert self.is_basic()
        return BasicMap(self.alpha, self.beta, self.P.coeff(1), self.P.coeff(0), self.v)

    def as_elementary(self):
        return self

    def det(self):
        return self.alpha * self.beta

    def __str__(self):
        return f"ElementaryMap(alpha={self.alpha}, beta={self.beta}, v={self.v}, P={self.P})"


@dataclass(frozen=True)
class BasicMap(_Letter):
    """(x, y) -> (alpha x + gamma y + u, beta y + v)."""

    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    u: Scalar
    v: Scalar
    factor = "B"

    def __post_init__(self):
        if (self.alpha * self.beta).is_zero():
            raise Singular("basic map with alpha*beta = 0")

    @classmethod
    def of(cls, ctx, alpha=1, beta=1, gamma=0, u=0, v=0):
        return cls(ctx(alpha), ctx(beta), ctx(gamma), ctx(u), ctx(v))

    @classmethod
    def identity(cls, ctx):
        return cls.of(ctx)

    @property
    def ctx(self):
        return self.alpha.ctx

    @property
    def matrix(self) -> Matrix2:
        return Matrix2(self.alpha, self.gamma, self.ctx.zero, self.beta)

    def params(self):
        return (self.alpha, self.beta, self.gamma, self.u, self.v)

    def is_identity(self):
        return (self.alpha.is_one() and self.beta.is_one() and self.gamma.is_zero()
                and self.u.is_zero() and self.v.is_zero())

    def is_linear(self):
        return self.u.is_zero() and self.v.is_zero()

    def _expand(self):
        return PolyMap(BiPoly.linear(self.ctx, self.alpha, self.gamma, self.u),
                       BiPoly.linear(self.ctx, 0, self.beta, self.v))

    def compose(self, o: "BasicMap") -> "BasicMap":
        return BasicMap(self.alpha * o.alpha, self.beta * o.beta,
                        self.alpha * o.gamma + self.gamma * o.beta,
                        self.alpha * o.u + self.gamma * o.v + self.u,
                        self.beta * o.v + self.v)

    def inverse(self) -> "BasicMap":
        ai, bi = self.alpha.inverse(), self.beta.inverse()
        g = -self.gamma * ai * bi
        return BasicMap(ai, bi, g, -(ai * self.u + g * self.v), -bi * self.v)

    def as_affine(self) -> AffineMap:
        return AffineMap((self.u, self.v), self.matrix)

    def as_elementary(self) -> ElementaryMap:
        return ElementaryMap(self.alpha, self.beta, self.v, UniPoly(self.ctx, [self.u, self.gamma]))

    def as_basic(self):
        return self

    def is_basic(self):
        return True

    def det(self):
        return self.alpha * self.beta

    def __str__(self):
        return f"BasicMap({self.alpha}, {self.beta}, {self.gamma}, {self.u}, {self.v})"


@dataclass(frozen=True)
class CosetRepA(_Letter):
    """The linear map with matrix ``[[0, 1], [1, beta]]``: (x, y) -> (y, x + beta y)."""

    beta: Scalar
    factor = "A"

    @property
    def ctx(self):
        return self.beta.ctx

    def as_affine(self) -> AffineMap:
        ctx = self.ctx
        return AffineMap((ctx.zero, ctx.zero), Matrix2(ctx.zero, ctx.one, ctx.one, self.beta))

    def _expand(self):
        return self.as_affine().polymap

    def inverse(self) -> AffineMap:
        return self.as_affine().inverse()

    def det(self):
        return -self.ctx.one

    def __str__(self):
        return f"CosetRepA({self.beta})"


@dataclass(frozen=True)
class CosetRepE(_Letter):
    """(x, y) -> (x + y^2 P(y), y) with P nonzero."""

    P: UniPoly
    factor = "E"

    def __post_init__(self):
        if self.P.is_zero():
            raise ValueError("coset representative needs a nonzero polynomial")

    @property
    def ctx(self):
        return self.P.ctx

    @property
    def shape(self) -> UniPoly:
        """The full polynomial y^2 P(y)."""
        return UniPoly._make(self.ctx, (0, 0) + self.P.coeffs)

    def degree(self) -> int:
        return self.P.degree() + 2

    def as_elementary(self) -> ElementaryMap:
        ctx = self.ctx
        return ElementaryMap(ctx.one, ctx.one, ctx.zero, self.shape)

    def _expand(self):
        return self.as_elementary().polymap

    def inverse(self) -> "CosetRepE":
        return CosetRepE(-self.P)

    def det(self):
        return self.ctx.one

    def __str__(self):
        return f"CosetRepE({self.P})"


def invert_letter(g):
    return g.inverse()


@dataclass(frozen=True)
class Classification:
    """Result of :func:`classify_letter`. ``kind`` is 'basic', 'affine' or 'elementary'."""

    kind: str
    letter: object
    coset_rep: object = None


def classify_letter(f: PolyMap):
    """Exact structural recognition of a single generator; None if f is none."""
    ctx = f.ctx
    P, Q = f.P, f.Q
    rep = None
    if all(i + j <= 1 for F in (P, Q) for i, j in F.terms):
        M = Matrix2(P.coeff(1, 0), P.coeff(0, 1), Q.coeff(1, 0), Q.coeff(0, 1))
        if M.det().is_zero():
            return None
        aff = AffineMap((P.constant_term(), Q.constant_term()), M)
        if aff.is_basic():
            return Classification("basic", aff.as_basic())
        if (M.a.is_zero() and M.b.is_one() and M.c.is_one()
                and aff.a[0].is_zero() and aff.a[1].is_zero()):
            rep = CosetRepA(M.d)
        return Classification("affine", aff, rep)
    # elementary: Q = beta y + v, P = alpha x + P(y)
    if any(i for i, _ in Q.terms) or Q.degree_in("y") > 1:
        return None
    beta, v = Q.coeff(0, 1), Q.constant_term()
    if beta.is_zero():
        return None
    alpha = P.coeff(1, 0)
    rest = P - BiPoly.constant(ctx, alpha) * BiPoly.x(ctx)
    py = rest.as_unipoly_y()
    if alpha.is_zero() or py is None:
        return None
    e = ElementaryMap(alpha, beta, v, py)
    if (alpha.is_one() and beta.is_one() and v.is_zero()
            and py.coeff(0).is_zero() and py.coeff(1).is_zero()):
        rep = CosetRepE(py.shift_down(2))
    return Classification("elementary", e, rep)
