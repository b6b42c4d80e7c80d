"""Sparse multivariate polynomials and a triangular solver for small systems.

The solver only eliminates a variable when some equation is linear in it with a
constant coefficient, or when an equation is univariate (roots over Q via
sympy, by enumeration over F_p). Over F_p a stuck system is branched by
enumerating one variable; over Q it raises Undecided.
"""
from __future__ import annotations

from fractions import Fraction

from .algebra import FieldCtx
from .errors import Undecided


class MPoly:
    __slots__ = ("ctx", "n", "terms")

    def __init__(self, ctx: FieldCtx, n: int, terms=None):
        self.ctx = ctx
        self.n = n
        self.terms = terms or {}

    @classmethod
    def const(cls, ctx, n, c):
        r = ctx.raw(c)
        return cls(ctx, n, {(0,) * n: r} if r else {})

    @classmethod
    def var(cls, ctx, n, i):
        e = [0] * n
        e[i] = 1
        return cls(ctx, n, {tuple(e): ctx.raw(1)})

    def _c(self, other):
        if isinstance(other, MPoly):
            return other
        return MPoly.const(self.ctx, self.n, other)

    def __add__(self, other):
        other = self._c(other)
        out = dict(self.terms)
        norm = self.ctx.norm
        for k, c in other.terms.items():
            v = norm(out.get(k, 0) + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MPoly(self.ctx, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ctx, self.n, {k: self.ctx.norm(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._c(other))

    def __rsub__(self, other):
        return self._c(other) - self

    def __mul__(self, other):
        other = self._c(other)
        out = {}
        for k1, a in self.terms.items():
            for k2, b in other.terms.items():
                k = tuple(x + y for x, y in zip(k1, k2))
                out[k] = out.get(k, 0) + a * b
        norm = self.ctx.norm
        out = {k: norm(v) for k, v in out.items()}
        return MPoly(self.ctx, self.n, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e):
        out = MPoly.const(self.ctx, self.n, 1)
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(k) for k in self.terms)

    def constant(self):
        return self.terms.get((0,) * self.n, self.ctx.raw(0))

    def variables(self):
        return sorted({i for k in self.terms for i, e in enumerate(k) if e})

    def degree_in(self, i):
        return max((k[i] for k in self.terms), default=0)

    def total_degree(self):
        return max((sum(k) for k in self.terms), default=0)

    def coeffs_in(self, i):
        """{power: coefficient MPoly} viewing self as polynomial in variable i."""
        out = {}
        for k, c in self.terms.items():
            kk = list(k)
            e = kk[i]
            kk[i] = 0
            out.setdefault(e, {})[tuple(kk)] = c
        return {e: MPoly(self.ctx, self.n, t) for e, t in out.items()}

    def substitute(self, i, value: "MPoly"):
        if self.degree_in(i) == 0:
            return self
        parts = self.coeffs_in(i)
        acc = MPoly(self.ctx, self.n, {})
        top = max(parts)
        for e in range(top, -1, -1):
            acc = acc * value
            if e in parts:
                acc = acc + parts[e]
        return acc

    def evaluate(self, values):
        """Full evaluation; ``values`` maps variable index to raw value."""
        acc = 0
        for k, c in self.terms.items():
            t = c
            for i, e in enumerate(k):
                if e:
                    t = t * values[i] ** e
            acc = acc + t
        return self.ctx.norm(self.ctx.raw(0) + acc)

    def __repr__(self):
        return f"MPoly({self.terms})"


def univariate_roots(coeffs, ctx: FieldCtx):
    """Roots in the field of sum coeffs[k] t^k (raw coefficients), sorted."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    if ctx.p:
        p = ctx.p
        return [t for t in range(p) if sum(c * pow(t, k, p) for k, c in enumerate(coeffs)) % p == 0]
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t,
                      domain=sympy.QQ)
    roots = [Fraction(int(r.p), int(r.q)) for r in poly.ground_roots()]
    return sorted(roots)


def _linear_pivot(e):
    for i in e.variables():
        if e.degree_in(i) != 1:
            continue
        parts = e.coeffs_in(i)
        if parts[1].is_constant():
            rest = parts.get(0, MPoly(e.ctx, e.n, {}))
            return i, rest * (-e.ctx.inv_raw(parts[1].constant()))
    return None


def eliminate(eqs, state, subs):
    """Eagerly remove variables fixed linearly by some equation.

    Substitutes into ``eqs`` and into the expressions in ``state``; appends to
    ``subs``. Returns (eqs, state) or None when a contradiction shows up.
    """
    while True:
        eqs = [e for e in eqs if not e.is_zero()]
        if any(e.is_constant() for e in eqs):
            return None
        for e in eqs:
            piv = _linear_pivot(e)
            if piv:
                break
        else:
            return eqs, state
        i, value = piv
        subs.append((i, value))
        eqs = [q.substitute(i, value) for q in eqs]
        state = [q.substitute(i, value) for q in state]


def back_substitute(subs, values):
    """Fill ``values`` (dict) for the substituted variables, latest first."""
    for i, expr in reversed(subs):
        values[i] = expr.evaluate(values)
    return values


def solve(eqs, ctx: FieldCtx, n: int, free_value=0):
    """Yield solutions (tuples of raw values) of the system ``eqs == 0``.

    Variables left unconstrained take ``free_value``. Raises Undecided if the
    system cannot be triangularized by the two elimination rules.
    """
    for subs in _solve(list(eqs), []):
        values = {j: ctx.raw(free_value) for j in range(n)}
        back_substitute(subs, values)
        yield tuple(values[j] for j in range(n))


def _solve(eqs, subs):
    eqs = [e for e in eqs if not e.is_zero()]
    if any(e.is_constant() for e in eqs):
        return
    if not eqs:
        yield subs
        return
    for e in eqs:
        piv = _linear_pivot(e)
        if piv:
            i, value = piv
            yield from _solve([q.substitute(i, value) for q in eqs], subs + [(i, value)])
            return
    for e in eqs:
        vs = e.variables()
        if len(vs) == 1:
            i = vs[0]
            parts = e.coeffs_in(i)
            coeffs = [parts[k].constant() if k in parts else 0 for k in range(max(parts) + 1)]
            for root in univariate_roots(coeffs, e.ctx):
                val = MPoly.const(e.ctx, e.n, root)
                yield from _solve([q.substitute(i, val) for q in eqs], subs + [(i, val)])
            return
    ctx = eqs[0].ctx
    if ctx.p:
        # finite field: branch over every value of the first remaining variable
        i = eqs[0].variables()[0]
        for t in range(ctx.p):
            val = MPoly.const(ctx, eqs[0].n, t)
            yield from _solve([q.substitute(i, val) for q in eqs], subs + [(i, val)])
        return
    raise Undecided("constraint system is not triangular")
