"""Conjugacy of cyclically reduced elements, linearization of involutions, orders."""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from . import _polysys
from ._polysys import MPoly
from .algebra import INFINITE, UNKNOWN, FieldCtx, Scalar, mult_order
from .amalgam import (NormalForm, Word, cyclically_reduce, normalize, poly_degree,
                      to_normal_form)
from .errors import (CharacteristicTwo, FieldMismatch, NotCyclicallyReduced, NotInFactor,
                     NotInvolution, Singular, Undecided)
from .generators import AffineMap, BasicMap, ElementaryMap, Matrix2

__all__ = ["Matrix2", "INFINITE", "UNKNOWN", "crnf_conjugacy_necessary", "crnf_conjugate",
           "linear_conjugate", "linearize_involution", "Linearization", "order_of_basic",
           "order_of_element", "canonical_involution", "is_cyclic_shift"]


def _require_cr(*gs):
    for g in gs:
        if not g.is_cyclically_reduced():
            raise NotCyclicallyReduced(f"length {g.length} is not even and positive")


def is_cyclic_shift(a, b) -> bool:
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        return False
    return not a or any(a[k:] + a[:k] == b for k in range(len(a)))


def crnf_conjugacy_necessary(g1: NormalForm, g2: NormalForm) -> bool:
    _require_cr(g1, g2)
    return g1.length == g2.length and is_cyclic_shift(poly_degree(g1), poly_degree(g2))


# --- conjugator search ---------------------------------------------------------

def _shifted(S, scale, shift):
    """Coefficients (in Y) of S(scale*Y + shift) where shift is an MPoly."""
    n = shift.n
    ctx = shift.ctx
    lin = [shift, MPoly.const(ctx, n, scale)]
    out = [MPoly(ctx, n, {})]
    for c in reversed(S.coeffs):
        # out = out * lin + c
        nxt = [MPoly(ctx, n, {}) for _ in range(len(out) + 1)]
        for i, a in enumerate(out):
            if a.is_zero():
                continue
            nxt[i] = nxt[i] + a * lin[0]
            nxt[i + 1] = nxt[i + 1] + a * lin[1]
        nxt[0] = nxt[0] + c
        out = nxt
    return out


def _diagonal_candidates(g1: NormalForm, g2: NormalForm):
    """Possible (alpha, beta) of x1 = b^-1 for b o g1 o b^-1 = g2."""
    ctx = g1.ctx
    A, B = MPoly.var(ctx, 2, 0), MPoly.var(ctx, 2, 1)
    cur = [A, B]
    eqs = []
    for c, d in zip(reversed(g1.letters), reversed(g2.letters)):
        if c.factor == "A":
            cur = cur[::-1]
        else:
            S, T = c.shape, d.shape
            n = S.degree()
            eqs.append(cur[1] ** n * S.coeffs[-1] - cur[0] * T.coeffs[-1])
    eqs.append(cur[0] * g1.b.alpha.value - A * g2.b.alpha.value)
    eqs.append(cur[1] * g1.b.beta.value - B * g2.b.beta.value)
    for al, be in _polysys.solve(eqs, ctx, 2, free_value=1):
        if al != 0 and be != 0:
            yield al, be


def _basic_conjugator(g1: NormalForm, g2: NormalForm):
    """Some basic b with b o g1 o b^-1 = g2 (same letter types), else None."""
    ctx = g1.ctx
    undecided = None
    for al0, be0 in _diagonal_candidates(g1, g2):
        gv, uv, vv = (MPoly.var(ctx, 3, i) for i in range(3))
        al, be = al0, be0
        state = [gv, uv, vv]  # gamma, u, v of the propagated basic element
        eqs, subs = [], []
        for c, d in zip(reversed(g1.letters), reversed(g2.letters)):
            g, u, v = state
            if c.factor == "A":
                bc, bd = c.beta.value, d.beta.value
                eqs.append(g + bc * be - al * bd)
                al, be = be, al
                state = [MPoly(ctx, 3, {}), v, u + v * bc]
            else:
                S, T = c.shape, d.shape
                co = _shifted(S, be, v)
                for k in range(2, len(co)):
                    tk = T.coeffs[k] if k < len(T.coeffs) else 0
                    eqs.append(co[k] - al * tk)
                state = [g + co[1], u + co[0], v]
            red = _polysys.eliminate(eqs, state + [gv, uv, vv], subs)
            if red is None:
                break
            eqs, full = red
            state, (gv, uv, vv) = full[:3], full[3:]
        else:
            g, u, v = state
            b1, b2 = g1.b, g2.b
            a1, c1, d1, u1, v1 = (s.value for s in (b1.alpha, b1.gamma, b1.beta, b1.u, b1.v))
            a2, c2, d2, u2, v2 = (s.value for s in (b2.alpha, b2.gamma, b2.beta, b2.u, b2.v))
            # b1 o x_final = x1 o b2
            eqs.append((g * a1 + c1 * be) - (gv * d2 + al0 * c2))
            eqs.append((u * a1 + v * c1 + u1) - (uv + gv * v2 + al0 * u2))
            eqs.append((v * d1 + v1) - (vv + be0 * v2))
            try:
                for sol in _polysys.solve(eqs, ctx, 3):
                    values = _polysys.back_substitute(subs, dict(enumerate(sol)))
                    x1 = BasicMap(Scalar(al0, ctx), Scalar(be0, ctx),
                                  *(Scalar(values[i], ctx) for i in range(3)))
                    return x1.inverse()
            except Undecided as exc:
                undecided = exc
    if undecided is not None:
        raise undecided
    return None


def crnf_conjugate(g1: NormalForm, g2: NormalForm):
    """A Word h with h o g1 o h^-1 = g2 (verified), or None.

    Tries cyclic shifts of g1 in order, smallest first, then solves for a basic
    conjugator. Raises Undecided if some shift could not be settled and no
    conjugator was found.
    """
    if g1.ctx != g2.ctx:
        raise FieldMismatch("normal forms over different fields")
    if not crnf_conjugacy_necessary(g1, g2):
        return None
    n = g1.length
    undecided = None
    for k in range(n):
        w = Word(g1.letters[n - k:]) if k else Word(())
        g1s = normalize(w @ g1.word() @ w.inverse(), g1.ctx) if k else g1
        if g1s.letters[0].factor != g2.letters[0].factor:
            continue
        if poly_degree(g1s) != poly_degree(g2):
            continue
        try:
            b = _basic_conjugator(g1s, g2)
        except Undecided as exc:
            undecided = exc
            continue
        if b is None:
            continue
        h = Word((b,)) @ w
        if normalize(h @ g1.word() @ h.inverse(), g1.ctx) == g2:
            return h
    if undecided is not None:
        raise Undecided(f"conjugator search undecided: {undecided}")
    return None


# --- linear algebra -------------------------------------------------------------

def _cyclic_basis(M: Matrix2) -> Matrix2:
    # a non-scalar matrix has at most two eigenlines, so one of these is cyclic
    ctx = M.ctx
    for w in ((ctx.one, ctx.zero), (ctx.zero, ctx.one), (ctx.one, ctx.one)):
        Mw = M.apply(w)
        P = Matrix2(w[0], Mw[0], w[1], Mw[1])
        if not P.det().is_zero():
            return P
    raise Singular("no cyclic vector: matrix is scalar")


def linear_conjugate(A: Matrix2, B: Matrix2):
    """C with C A C^-1 = B, or None if A and B are not conjugate in GL2."""
    if A.det().is_zero() or B.det().is_zero():
        raise Singular("conjugacy test needs invertible matrices")
    if A.is_scalar() or B.is_scalar():
        return Matrix2.identity(A.ctx) if A == B else None
    if A.trace() != B.trace() or A.det() != B.det():
        return None
    # both are similar to the companion matrix of the shared characteristic polynomial
    PA, PB = _cyclic_basis(A), _cyclic_basis(B)
    return PB @ PA.inverse()


def canonical_involution(kind: str, ctx: FieldCtx) -> AffineMap:
    rows = ((-1, 0), (0, -1)) if kind == "I" else ((0, 1), (1, 0))
    return AffineMap.of(ctx, (0, 0), rows)


@dataclass(frozen=True)
class Linearization:
    """``conjugator o r o conjugator^-1`` is the linear involution ``kind`` ('I' or 'T')."""

    conjugator: Word
    kind: str

    def linear_map(self, ctx):
        return canonical_involution(self.kind, ctx)


def _linearize_affine(r: AffineMap):
    ctx = r.ctx
    M, a = r.M, r.a
    if not (M @ M).is_identity() or M.apply(a) != (-a[0], -a[1]):
        raise NotInvolution("affine map is not an involution")
    half = ctx(1) / 2
    if M.is_identity():
        raise NotInvolution("identity is not an involution")
    if M == -Matrix2.identity(ctx):
        C, kind = Matrix2.identity(ctx), "I"
    else:
        T = canonical_involution("T", ctx).M
        if not M.c.is_zero():
            C = Matrix2(M.c, -M.a, ctx.zero, ctx.one)
        else:
            C = linear_conjugate(M, T)
        kind = "T"
    # h = C o (translation by -a/2)
    t = C.apply((-a[0] * half, -a[1] * half))
    return AffineMap(t, C), kind


def _linearize_elementary(e: ElementaryMap):
    ctx = e.ctx
    if not e.compose(e).polymap.is_identity():
        raise NotInvolution("elementary map is not an involution")
    half = ctx(1) / 2
    S = Matrix2.of(ctx, ((-1, 0), (0, 1)))
    T = canonical_involution("T", ctx).M
    to_T = AffineMap.linear(linear_conjugate(S, T))
    if e.beta.is_one():
        # x -> -x + P(y): x -> x - P(y)/2 gives diag(-1, 1)
        h = ElementaryMap(ctx.one, ctx.one, ctx.zero, e.P * (-half))
        return Word((to_T, h)), "T"
    # beta = -1: (x, y) -> (y - v/2, x + P(y)/(2 alpha)) gives diag(-1, alpha)
    swap = canonical_involution("T", ctx)
    h = Word((swap, ElementaryMap(ctx.one, ctx.one, -e.v * half, e.P * (half / e.alpha))))
    if e.alpha.is_one():
        return Word((to_T,)) @ h, "T"
    return h, "I"


def linearize_involution(r) -> Linearization:
    """Conjugate an involution of a factor to I = -id or T = swap."""
    nf = to_normal_form(r)
    ctx = nf.ctx
    if ctx.p == 2:
        raise CharacteristicTwo("involutions are not linearized in characteristic 2")
    if nf.is_identity():
        raise NotInvolution("identity is not an involution")
    st = cyclically_reduce(nf)
    if st.tag == "CR":
        raise NotInFactor("cyclically reduced elements have infinite order")
    letter = st.letter
    if isinstance(letter, BasicMap):
        letter = letter.as_affine()
    if isinstance(letter, AffineMap):
        h0, kind = _linearize_affine(letter)
        h0 = Word((h0,))
    else:
        h0, kind = _linearize_elementary(letter)
    return Linearization(h0 @ st.conjugator.inverse(), kind)


# --- orders ------------------------------------------------------------------------

def _affine_power(a: AffineMap, n: int) -> AffineMap:
    ctx = a.ctx
    result = AffineMap.of(ctx, (0, 0), ((1, 0), (0, 1)))
    base = a
    while n:
        if n & 1:
            result = result.compose(base)
        base = base.compose(base)
        n >>= 1
    return result


def _is_identity_affine(a: AffineMap):
    return a.M.is_identity() and a.a[0].is_zero() and a.a[1].is_zero()


def order_of_basic(b: BasicMap):
    """Exact order of a basic map: an int or INFINITE."""
    ctx = b.ctx
    oa, ob = mult_order(b.alpha), mult_order(b.beta)
    if oa is INFINITE or ob is INFINITE:
        return INFINITE
    n = lcm(oa, ob)
    if b.alpha == b.beta and not b.gamma.is_zero():
        # M^n = [[a^n, n a^(n-1) gamma], [0, a^n]]
        if ctx.p == 0:
            return INFINITE
        n = lcm(ctx.p, n)
    aff = b.as_affine()
    # (a, M)^n = ((1 + M + ... + M^(n-1)) a, M^n)
    if _is_identity_affine(_affine_power(aff, n)):
        return n
    if ctx.p == 0:
        return INFINITE
    return n * ctx.p


def _brute_order(x, cap):
    acc = x
    for k in range(1, cap + 1):
        if acc.polymap.is_identity():
            return k
        acc = acc.compose(x)
    return UNKNOWN


def order_of_element(g, cap: int = 64):
    """int, INFINITE, or UNKNOWN when brute force passes ``cap``."""
    nf = to_normal_form(g)
    st = cyclically_reduce(nf)
    if st.tag == "CR":
        return INFINITE
    if st.tag == "Basic":
        return order_of_basic(st.nf.b)
    x = st.letter
    ctx = nf.ctx
    if ctx.p == 0:
        if isinstance(x, AffineMap):
            for N in (1, 2, 3, 4, 6):
                if (x.M ** N).is_identity():
                    return N if _is_identity_affine(_affine_power(x, N)) else INFINITE
            return INFINITE
        # over Q a non-trivial elementary map of finite order is an involution
        if x.polymap.is_identity():
            return 1
        return 2 if x.compose(x).polymap.is_identity() else INFINITE
    return _brute_order(x, cap)
