"""Symmetries and reversing symmetries: detection, certificates, constructions.

A symmetry ``s`` of ``f`` satisfies ``s o f o s^-1 = f``; a reversor ``r``
satisfies ``r o f o r^-1 = f^-1``. Equalities are decided on normal forms,
which are unique, so every comparison here is exact.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from . import _polysys
from ._polysys import MPoly
from .algebra import UNKNOWN, FieldCtx, Scalar, has_primitive_fourth_root, is_odd_poly
from .amalgam import NormalForm, Word, nf_lines, normalize, parse_nf, poly_degree, to_normal_form
from .conjugacy import is_cyclic_shift, order_of_element
from .errors import (CapExceeded, CharacteristicTwo, EvenPolynomial, FourthRootPresent,
                     InconsistentCertificates, InvalidLetters, NotCyclicallyReduced,
                     NotFixedPoint, ParseError, ReversorCheckFailed, TheoremViolation,
                     UnsupportedField, ZeroGamma)
from .parsing import parse_scalar
from .generators import AffineMap, CosetRepA, CosetRepE, ElementaryMap, Matrix2, PolyMap

__all__ = ["SymWitness", "ReversorWitness", "GroupStructureTag", "is_symmetry", "is_reversor",
           "involutory_symmetry_of_crnf", "symmetry_nf_check", "reversibility_necessary",
           "build_reversible_involutory", "build_reversible_order4", "reversor_order",
           "fixed_point_spectrum_check", "classify_reversing_group", "factor_by_reversor",
           "swap_map", "quarter_turn"]


# --- certificates -------------------------------------------------------------------

@dataclass(frozen=True)
class SymWitness:
    """The involution (x, y) -> (-x + u, -y + v)."""

    u: Scalar
    v: Scalar

    def as_affine(self) -> AffineMap:
        ctx = self.u.ctx
        return AffineMap((self.u, self.v), -Matrix2.identity(ctx))

    @classmethod
    def verified(cls, g, u: Scalar, v: Scalar) -> "SymWitness":
        w = cls(u, v)
        if not is_symmetry(g, w.as_affine()):
            raise InconsistentCertificates(f"(-x + {u}, -y + {v}) does not commute with g")
        return w

    def to_text(self) -> str:
        return f"SYM u={self.u} v={self.v}"

    @classmethod
    def from_text(cls, text: str, ctx: FieldCtx) -> "SymWitness":
        m = re.fullmatch(r"\s*SYM\s+u=(\S+)\s+v=(\S+)\s*", text)
        if not m:
            raise ParseError("expected 'SYM u=<scalar> v=<scalar>'", 0)
        return cls(parse_scalar(m.group(1), ctx), parse_scalar(m.group(2), ctx))


@dataclass(frozen=True)
class ReversorWitness:
    r: NormalForm
    order: int

    def to_text(self) -> str:
        return f"REV order={self.order} word={'; '.join(nf_lines(self.r))}"

    @classmethod
    def from_text(cls, text: str, ctx: FieldCtx) -> "ReversorWitness":
        m = re.fullmatch(r"\s*REV\s+order=(\d+)\s+word=(.*)", text, re.S)
        if not m:
            raise ParseError("expected 'REV order=<n> word=<normal form>'", 0)
        return cls(parse_nf(m.group(2), ctx), int(m.group(1)))


class GroupStructureTag(enum.Enum):
    Cinf = "Cinf"
    C2xCinf = "C2xCinf"
    Dinf = "Dinf"
    CinfRtimesC4 = "CinfRtimesC4"
    CinfxC2RtimesC2 = "CinfxC2RtimesC2"
    UnknownOrIrreversible = "UnknownOrIrreversible"

    def to_text(self) -> str:
        return f"GROUP tag={self.value}"


# --- exact tests ----------------------------------------------------------------------

def is_symmetry(f, s) -> bool:
    F, S = to_normal_form(f), to_normal_form(s)
    return S @ F == F @ S


def is_reversor(f, r) -> bool:
    F, R = to_normal_form(f), to_normal_form(r)
    return R @ F @ R.inverse() == F.inverse()


def _require_cr(g: NormalForm):
    if not g.is_cyclically_reduced():
        raise NotCyclicallyReduced(f"length {g.length} is not even and positive")


def symmetry_nf_check(g: NormalForm) -> bool:
    """Shape test for an element commuting with -id in its given normal form."""
    _require_cr(g)
    odd = all(is_odd_poly(c.shape) for c in g.letters if c.factor == "E")
    pd_ok = all(n % 2 == 1 and n >= 3 for n in poly_degree(g))
    return odd and pd_ok and g.b.is_linear()


def reversibility_necessary(g: NormalForm) -> bool:
    _require_cr(g)
    pd = poly_degree(g)
    one = g.ctx.one
    return is_cyclic_shift(pd, pd[::-1]) and g.b.det() in (one, -one)


# --- involutory symmetry search -------------------------------------------------------

def _bipoly_to_mpoly(F, sx, sy, n):
    """F(sx, sy) for MPolys sx, sy."""
    ctx = F.ctx
    dx = max((i for i, _ in F.terms), default=0)
    dy = max((j for _, j in F.terms), default=0)
    px = [MPoly.const(ctx, n, 1)]
    for _ in range(dx):
        px.append(px[-1] * sx)
    py = [MPoly.const(ctx, n, 1)]
    for _ in range(dy):
        py.append(py[-1] * sy)
    out = MPoly(ctx, n, {})
    for (i, j), c in F.terms.items():
        out = out + px[i] * py[j] * c
    return out


def _commutation_equations(F, shift_var, ctx):
    """Coefficient equations in (u, v) for F(-x + u, -y + v) + F(x, y) = shift."""
    n = 4
    X, Y, U, V = (MPoly.var(ctx, n, i) for i in range(n))
    lhs = _bipoly_to_mpoly(F, -X + U, -Y + V, n) + _bipoly_to_mpoly(F, X, Y, n)
    lhs = lhs - (U if shift_var == 0 else V)
    grouped = {}
    for (i, j, a, b), c in lhs.terms.items():
        grouped.setdefault((i, j), {})[(a, b)] = c
    return [MPoly(ctx, 2, t) for t in grouped.values()]


def _top_degree_parity_ok(F) -> bool:
    d = max((i + j for i, j in F.terms), default=0)
    return d == 0 or d % 2 == 1


def involutory_symmetry_of_crnf(g: NormalForm):
    """A verified :class:`SymWitness` for ``g``, or None.

    Raises Undecided when the (u, v) system cannot be triangularized over Q.
    """
    _require_cr(g)
    ctx = g.ctx
    if ctx.p == 2:
        raise CharacteristicTwo("-id is the identity in characteristic 2")
    if any(n % 2 == 0 for n in poly_degree(g)):
        return None
    f = g.to_polymap()
    if not (_top_degree_parity_ok(f.P) and _top_degree_parity_ok(f.Q)):
        return None
    eqs = _commutation_equations(f.P, 0, ctx) + _commutation_equations(f.Q, 1, ctx)
    for u, v in _polysys.solve(eqs, ctx, 2):
        w = SymWitness(Scalar(u, ctx), Scalar(v, ctx))
        s = w.as_affine().polymap
        # second route: compose the expanded maps directly
        if s.compose(f) == f.compose(s):
            return w
    return None


# --- constructions ------------------------------------------------------------------

def swap_map(ctx) -> CosetRepA:
    return CosetRepA(ctx.zero)


def quarter_turn(ctx) -> AffineMap:
    """(x, y) -> (-y, x)."""
    return AffineMap.of(ctx, (0, 0), ((0, -1), (1, 0)))


def _is_involution(x) -> bool:
    pm = x.polymap
    return not pm.is_identity() and pm.compose(pm).is_identity()


def _check_alternating(letters):
    for c in letters:
        if not isinstance(c, (CosetRepA, CosetRepE)):
            raise InvalidLetters(f"{c} is not a coset representative")
    for c1, c2 in zip(letters, letters[1:]):
        if c1.factor == c2.factor:
            raise InvalidLetters("letters must alternate between the two factors")


def _check_elementary_involution(e, name):
    if not isinstance(e, ElementaryMap) or e.is_basic() or not _is_involution(e):
        raise InvalidLetters(f"{name} must be a non-basic elementary involution")


def factor_by_reversor(f, w):
    """``V = f o w`` so that ``f = V o w^-1``; returns (V, V^2 == w^2)."""
    F, W = to_normal_form(f), to_normal_form(w)
    V = F @ W
    return V, V @ V == W @ W


def build_reversible_involutory(letters, form: int, *, lead=None, hat=None, bar=None):
    """A reversible element ``h o i1 o h^-1 o i2`` and its involutory reversor ``i2``.

    ``h = lead o letters`` with ``letters`` alternating coset representatives
    and ``lead`` an optional basic map. Forms:

    1. letters start and end with an E letter; i1 = i2 = swap.
    2. letters start with an E letter and end with an A letter (or are a
       single E letter); i1 = ``hat``, i2 = swap.
    3. letters start and end with an A letter; i1 = ``hat``, i2 = ``bar``.
    """
    letters = tuple(letters)
    if not letters:
        raise InvalidLetters("at least one letter is needed")
    _check_alternating(letters)
    ctx = letters[0].ctx
    if ctx.p == 2:
        raise CharacteristicTwo("involutions are not classified in characteristic 2")
    first, last = letters[0].factor, letters[-1].factor
    T = swap_map(ctx)
    if form == 1:
        if first != "E" or last != "E":
            raise InvalidLetters("form 1 needs letters starting and ending with E")
        i1, i2 = T, T
    elif form == 2:
        if first != "E" or (last != "A" and len(letters) > 1):
            raise InvalidLetters("form 2 needs letters starting with E and ending with A")
        _check_elementary_involution(hat, "hat")
        i1, i2 = hat, T
    elif form == 3:
        if first != "A" or last != "A":
            raise InvalidLetters("form 3 needs letters starting and ending with A")
        _check_elementary_involution(hat, "hat")
        _check_elementary_involution(bar, "bar")
        i1, i2 = hat, bar
    else:
        raise InvalidLetters(f"unknown form {form}")
    h = Word(((lead,) if lead is not None else ()) + letters)
    f = normalize(h @ Word((i1,)) @ h.inverse() @ Word((i2,)), ctx)
    r = normalize(Word((i2,)), ctx)
    if not is_reversor(f, r):
        raise TheoremViolation("constructed involution does not reverse the product")
    return f, ReversorWitness(r, 2)


def build_reversible_order4(e_letters, a_letters, alpha, gamma):
    """``h o R o h^-1 o R2`` with reversor ``-R2`` of order 4.

    ``h = e_m o a_{m-1} o e_{m-1} o ... o a_1 o e_1``: ``e_letters`` lists
    ``(e_m, ..., e_1)`` and ``a_letters`` lists ``(a_{m-1}, ..., a_1)``.
    ``R = (x, y) -> (-y, x)`` and ``R2 = [[alpha, -(alpha^2 + 1)/gamma], [gamma, -alpha]]``.
    """
    e_letters, a_letters = tuple(e_letters), tuple(a_letters)
    if not e_letters or len(a_letters) != len(e_letters) - 1:
        raise InvalidLetters("need m >= 1 E letters and m - 1 A letters")
    ctx = e_letters[0].ctx
    if ctx.p == 2:
        raise CharacteristicTwo("order-4 reversors need characteristic other than 2")
    if has_primitive_fourth_root(ctx):
        raise FourthRootPresent(f"{ctx.kind} contains a square root of -1")
    alpha, gamma = ctx(alpha), ctx(gamma)
    if gamma.is_zero():
        raise ZeroGamma("R2 needs a nonzero lower-left entry")
    for e in e_letters:
        if not isinstance(e, CosetRepE):
            raise InvalidLetters(f"{e} is not an E coset representative")
        if not is_odd_poly(e.shape):
            raise EvenPolynomial(f"{e.shape} is not odd")
    seq = [e_letters[0]]
    for a, e in zip(a_letters, e_letters[1:]):
        seq += [a, e]
    _check_alternating(seq)
    R = quarter_turn(ctx)
    R2 = AffineMap.linear(Matrix2(alpha, -(alpha * alpha + 1) / gamma, gamma, -alpha))
    h = Word(tuple(seq))
    f = normalize(h @ Word((R,)) @ h.inverse() @ Word((R2,)), ctx)
    r = normalize(Word((AffineMap.linear(-R2.M),)), ctx)
    if not is_reversor(f, r):
        raise TheoremViolation("order-4 construction is not reversed by -R2")
    return f, ReversorWitness(r, 4)


# --- orders and spectra -----------------------------------------------------------

def _power_order(R: NormalForm, cap: int):
    acc = R
    for k in range(1, cap + 1):
        if acc.is_identity():
            return k
        acc = acc @ R
    raise CapExceeded(f"reversor order exceeds {cap}")


def reversor_order(f, r, cap: int = 64) -> int:
    """Exact order of the reversor ``r`` of ``f``, found by powering."""
    F, R = to_normal_form(f), to_normal_form(r)
    if not is_reversor(F, R):
        raise ReversorCheckFailed("r does not conjugate f to its inverse")
    n = _power_order(R, cap)
    # second route: factor-conjugate orders from the order machinery
    other = order_of_element(R, cap)
    if other is not UNKNOWN and other != n:
        raise TheoremViolation(f"powering gives {n}, order computation gives {other}")
    if n % 2:
        raise TheoremViolation(f"reversor of odd order {n}")
    if F.ctx.p == 0 and F.is_cyclically_reduced() and n not in (2, 4):
        raise TheoremViolation(f"reversor of order {n} over Q")
    return n


def fixed_point_spectrum_check(f, r, a) -> bool:
    """Whether df(a) and df(r(a)) have reciprocal spectra."""
    fm = to_normal_form(f).to_polymap() if not isinstance(f, PolyMap) else f
    rm = to_normal_form(r).to_polymap() if not isinstance(r, PolyMap) else r
    a = tuple(a)
    if tuple(fm(a)) != a:
        raise NotFixedPoint(f"{a} is not fixed by f")
    if not is_reversor(fm, rm):
        raise ReversorCheckFailed("r does not conjugate f to its inverse")
    J1, J2 = fm.jacobian_at(a), fm.jacobian_at(rm(a))
    d1, d2 = J1.det(), J2.det()
    return d1 * d2 == 1 and J1.trace() == J2.trace() / d2


# --- reversing symmetry group -----------------------------------------------------------

def classify_reversing_group(f, sym=None, revs=()) -> GroupStructureTag:
    """Label the subgroup generated by the supplied, re-verified certificates."""
    F = to_normal_form(f)
    if F.ctx.p != 0:
        raise UnsupportedField("group structure labels are only justified over Q")
    if sym is not None and not is_symmetry(F, sym.as_affine()):
        raise InconsistentCertificates("symmetry witness does not commute with f")
    orders = []
    for w in revs:
        if not is_reversor(F, w.r):
            raise InconsistentCertificates("reversor witness does not reverse f")
        if _power_order(w.r, max(w.order, 1)) != w.order:
            raise InconsistentCertificates(f"stated reversor order {w.order} is wrong")
        if w.order == 4 and not is_symmetry(F, w.r @ w.r):
            raise InconsistentCertificates("square of an order-4 reversor is not a symmetry")
        orders.append(w.order)
    if 4 in orders:
        if 2 in orders:
            return GroupStructureTag.CinfxC2RtimesC2
        return GroupStructureTag.CinfRtimesC4
    if 2 in orders:
        if sym is not None:
            return GroupStructureTag.CinfxC2RtimesC2
        return GroupStructureTag.Dinf
    if sym is not None:
        return GroupStructureTag.C2xCinf
    return GroupStructureTag.UnknownOrIrreversible
