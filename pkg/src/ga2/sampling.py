"""Random letters, words and normal forms for tests and benchmarks."""
from __future__ import annotations

import random

from .algebra import FieldCtx, UniPoly
from .amalgam import NormalForm, Word, normalize
from .generators import (AffineMap, BasicMap, CosetRepA, CosetRepE, ElementaryMap,
                         Matrix2)


def rand_scalar(rng, ctx, height=5, nonzero=False):
    return ctx.random(rng, height, nonzero=nonzero)


def rand_unipoly(rng, ctx, max_deg=3, height=5, nonzero=False):
    while True:
        d = rng.randint(0, max_deg)
        P = UniPoly(ctx, [rand_scalar(rng, ctx, height) for _ in range(d + 1)])
        if not (nonzero and P.is_zero()):
            return P


def rand_matrix(rng, ctx, height=5):
    while True:
        M = Matrix2(*(rand_scalar(rng, ctx, height) for _ in range(4)))
        if not M.det().is_zero():
            return M


def rand_affine(rng, ctx, height=5):
    return AffineMap((rand_scalar(rng, ctx, height), rand_scalar(rng, ctx, height)),
                     rand_matrix(rng, ctx, height))


def rand_basic(rng, ctx, height=5):
    return BasicMap(rand_scalar(rng, ctx, height, True), rand_scalar(rng, ctx, height, True),
                    rand_scalar(rng, ctx, height), rand_scalar(rng, ctx, height),
                    rand_scalar(rng, ctx, height))


def rand_elementary(rng, ctx, max_deg=3, height=5):
    return ElementaryMap(rand_scalar(rng, ctx, height, True), rand_scalar(rng, ctx, height, True),
                         rand_scalar(rng, ctx, height), rand_unipoly(rng, ctx, max_deg, height))


def rand_letter(rng, ctx, max_deg=3, height=5):
    kind = rng.choice("AEB")
    if kind == "A":
        return rand_affine(rng, ctx, height)
    if kind == "E":
        return rand_elementary(rng, ctx, max_deg, height)
    return rand_basic(rng, ctx, height)


def rand_word(rng, ctx, max_len=6, max_deg=3, height=5):
    n = rng.randint(1, max_len)
    return Word(tuple(rand_letter(rng, ctx, max_deg, height) for _ in range(n)))


def rand_rep_a(rng, ctx, height=5):
    return CosetRepA(rand_scalar(rng, ctx, height))


def rand_rep_e(rng, ctx, max_deg=2, height=5, odd=False):
    """A representative x + y^2 P(y); with ``odd`` the polynomial P is odd."""
    while True:
        P = rand_unipoly(rng, ctx, max_deg, height)
        if odd:
            P = UniPoly(ctx, [c if k % 2 else 0 for k, c in enumerate(P.coeffs)])
        if not P.is_zero():
            return CosetRepE(P)


def rand_crnf(rng, ctx, pairs=None, max_pairs=3, max_deg=2, height=5) -> NormalForm:
    """A cyclically reduced normal form with ``pairs`` (A, E) pairs."""
    m = pairs or rng.randint(1, max_pairs)
    letters = []
    for _ in range(m):
        letters += [rand_rep_a(rng, ctx, height), rand_rep_e(rng, ctx, max_deg, height)]
    if rng.random() < 0.5:
        letters = letters[1:] + letters[:1]
    return NormalForm(rand_basic(rng, ctx, height), tuple(letters))


def rand_involution(rng, ctx, max_deg=3, height=5):
    """A random involution of one factor: affine, or elementary of the two shapes
    (-x + P(y), y) and (alpha x + P(y), -y + v) with alpha = +-1."""
    kind = rng.randrange(4)
    if kind == 0:
        a = (rand_scalar(rng, ctx, height), rand_scalar(rng, ctx, height))
        return AffineMap(a, -Matrix2.identity(ctx))
    if kind == 1:
        # M = C diag(-1, 1) C^-1, translation (1 - M) t so that M a = -a
        C = rand_matrix(rng, ctx, height)
        M = C @ Matrix2.of(ctx, ((-1, 0), (0, 1))) @ C.inverse()
        t = (rand_scalar(rng, ctx, height), rand_scalar(rng, ctx, height))
        Mt = M.apply(t)
        return AffineMap((t[0] - Mt[0], t[1] - Mt[1]), M)
    P = rand_unipoly(rng, ctx, max_deg, height)
    if kind == 2:
        return ElementaryMap(-ctx.one, ctx.one, ctx.zero, P)
    # P(y) = S(y - v/2) with S odd (alpha = 1) or even (alpha = -1)
    alpha = rng.choice((ctx.one, -ctx.one))
    v = rand_scalar(rng, ctx, height)
    keep = 1 if alpha.is_one() else 0
    S = UniPoly(ctx, [c if k % 2 == keep else 0 for k, c in enumerate(P.coeffs)])
    return ElementaryMap(alpha, -ctx.one, v, S.affine_substitute(ctx.one, -v / 2))


def rand_conjugate_pair(rng, ctx, **kw):
    """(g1, g2, w) with g2 = normal form of w o g1 o w^-1, where w is a random basic
    map composed with a cyclic shift of g1's letters."""
    g1 = rand_crnf(rng, ctx, **kw)
    k = rng.randrange(g1.length)
    w = Word((rand_basic(rng, ctx),)) @ Word(g1.letters[g1.length - k:])
    g2 = normalize(w @ g1.word() @ w.inverse(), ctx)
    return g1, g2, w


def rand_elementary_involution(rng, ctx, max_deg=3, height=5):
    """A non-basic elementary involution."""
    while True:
        e = rand_involution(rng, ctx, max_deg, height)
        if isinstance(e, ElementaryMap) and not e.is_basic():
            return e


def _alternating(rng, ctx, first, last, max_pairs, max_deg, height):
    while True:
        n = rng.randint(1, 2 * max_pairs + 1)
        kinds = [first if k % 2 == 0 else ("A" if first == "E" else "E") for k in range(n)]
        if kinds[-1] == last:
            break
    return tuple(rand_rep_e(rng, ctx, max_deg, height) if k == "E" else rand_rep_a(rng, ctx, height)
                 for k in kinds)


def rand_involutory_params(rng, ctx, form=None, max_pairs=2, max_deg=2, height=3):
    """Keyword arguments for ``build_reversible_involutory``."""
    form = form or rng.randint(1, 3)
    if form == 1:
        letters = _alternating(rng, ctx, "E", "E", max_pairs, max_deg, height)
    elif form == 2:
        letters = _alternating(rng, ctx, "E", "A", max_pairs, max_deg, height)
    else:
        letters = _alternating(rng, ctx, "A", "A", max_pairs, max_deg, height)
    kw = {"letters": letters, "form": form}
    if form == 1 and rng.random() < 0.5:
        kw["lead"] = rand_basic(rng, ctx, height)
    if form >= 2:
        kw["hat"] = rand_elementary_involution(rng, ctx, max_deg + 1, height)
    if form == 3:
        kw["bar"] = rand_elementary_involution(rng, ctx, max_deg + 1, height)
    return kw


def rand_order4_params(rng, ctx, max_pairs=2, max_deg=3, height=3):
    """Keyword arguments for ``build_reversible_order4``."""
    m = rng.randint(1, max_pairs)
    return {"e_letters": tuple(rand_rep_e(rng, ctx, max_deg, height, odd=True) for _ in range(m)),
            "a_letters": tuple(rand_rep_a(rng, ctx, height) for _ in range(m - 1)),
            "alpha": rand_scalar(rng, ctx, height),
            "gamma": rand_scalar(rng, ctx, height, nonzero=True)}


def q_and_primes():
    return [FieldCtx(0), FieldCtx(3), FieldCtx(5), FieldCtx(7)]


__all__ = [n for n in dir() if n.startswith("rand_")] + ["normalize", "random"]
