import random

import pytest

from ga2.algebra import BiPoly, FieldCtx, UniPoly, total_degree
from ga2.amalgam import (NormalForm, Word, cyclically_reduce, decompose, invert_nf, length,
                         nf_degree, normalize, parse_nf, parse_word, poly_degree,
                         to_normal_form, word_to_polymap, letter_line)
from ga2.errors import InvalidLetters, NoElementaryPart, NotAnAutomorphism
from ga2.generators import (AffineMap, BasicMap, CosetRepA, CosetRepE, ElementaryMap,
                            PolyMap)
from ga2.parsing import parse_map_expr
from ga2.sampling import rand_basic, rand_crnf, rand_elementary, rand_word

from conftest import FIELDS, Q

HENON = "(y, -x + y^2 + 1)"


def rep_e(ctx, *coeffs):
    return CosetRepE(UniPoly(ctx, coeffs))


def pd234(ctx=Q):
    """b o a o e(deg 2) o a o e(deg 3) o a o e(deg 4), a = swap."""
    a = CosetRepA(ctx.zero)
    letters = (a, rep_e(ctx, 1), a, rep_e(ctx, 0, 1), a, rep_e(ctx, 0, 0, 1))
    return NormalForm(BasicMap.identity(ctx), letters)


def test_decompose_henon():
    f = parse_map_expr(HENON, Q)
    w = decompose(f)
    assert len(w) == 3
    assert word_to_polymap(w) == f
    # the textbook factorization gives the same normal form
    textbook = Word((AffineMap.of(Q, (0, 1), ((1, 0), (0, -1))), CosetRepA(Q(0)),
                     ElementaryMap.of(Q, 1, 1, 0, [0, 0, -1])))
    assert word_to_polymap(textbook) == f
    assert normalize(w) == normalize(textbook)


def test_decompose_identity_and_rejection():
    assert len(decompose(PolyMap.identity(Q))) == 0
    with pytest.raises(NotAnAutomorphism):
        decompose(parse_map_expr("(x^3, x + y)", Q))
    with pytest.raises(NotAnAutomorphism):
        decompose(parse_map_expr("(x + y^2, y + x^2)", Q))


@pytest.mark.parametrize("ctx", FIELDS, ids=str)
def test_decompose_rejects_nonconstant_jacobian(ctx, rng):
    x = BiPoly.x(ctx)
    for _ in range(40):
        f = rand_word(rng, ctx, max_len=3, max_deg=2).to_polymap()
        k = rng.randint(2, 3)
        bad = PolyMap(f.P + x ** k, f.Q)
        if bad.jacobian_det().is_constant():
            continue
        with pytest.raises(NotAnAutomorphism):
            decompose(bad)


def test_normalize_examples():
    nf = normalize(Word((CosetRepA(Q(5)),)))
    assert nf.b.is_identity() and nf.letters == (CosetRepA(Q(5)),)
    e = ElementaryMap.of(Q, 2, 1, 0, [1, 1, 0, 1])
    nf = normalize(Word((e,)))
    assert nf.b == BasicMap.of(Q, alpha=2, beta=1, gamma=1, u=1, v=0)
    assert nf.letters == (rep_e(Q, 0, Q(1) / 2),)
    assert nf.to_polymap() == e.polymap
    h = to_normal_form(parse_map_expr(HENON, Q))
    assert h.length == 2 and poly_degree(h) == (2,)
    assert h.to_polymap() == parse_map_expr(HENON, Q)


@pytest.mark.parametrize("ctx", FIELDS, ids=str)
def test_round_trip_unique(ctx, rng):
    for _ in range(60):
        w = rand_word(rng, ctx)
        f = word_to_polymap(w)
        nf = normalize(w, ctx)
        assert normalize(decompose(f), ctx) == nf
        assert nf.to_polymap() == f
        assert nf_degree(nf) == f.degree()


def test_length_examples(rng):
    assert length(NormalForm(rand_basic(rng, Q))) == 0
    assert length(to_normal_form(parse_map_expr(HENON, Q))) == 2
    g = rand_crnf(rng, Q)
    assert length(g @ g) == 2 * length(g)


def test_poly_degree_examples():
    assert poly_degree(pd234()) == (2, 3, 4)
    assert nf_degree(pd234()) == 24
    assert pd234().to_polymap().degree() == 24
    assert poly_degree(normalize(Word((rep_e(Q, 0, 1),)))) == (3,)
    with pytest.raises(NoElementaryPart):
        poly_degree(normalize(Word((CosetRepA(Q(1)),))))
    assert nf_degree(NormalForm.identity(Q)) == 1


@pytest.mark.parametrize("ctx", FIELDS, ids=str)
def test_power_length_law(ctx, rng):
    for _ in range(15):
        g = rand_crnf(rng, ctx)
        for n in range(-3, 4):
            assert length(g ** n) == abs(n) * length(g)


@pytest.mark.parametrize("ctx", FIELDS, ids=str)
def test_invert_nf_reverses_poly_degree(ctx, rng):
    for _ in range(30):
        nf = normalize(rand_word(rng, ctx), ctx)
        inv = invert_nf(nf)
        assert (nf @ inv).is_identity()
        if any(c.factor == "E" for c in nf.letters):
            assert poly_degree(inv) == poly_degree(nf)[::-1]
    assert poly_degree(invert_nf(pd234())) == (4, 3, 2)


def test_cyclic_reduce_conjugated_shape(rng):
    a, e = CosetRepA(Q(2)), rep_e(Q, 1, 1)
    a1, e1 = CosetRepA(Q(-1)), rep_e(Q, 0, 3)
    w = Word((e1.inverse(), a1.inverse(), a, e, a1, e1))
    st = cyclically_reduce(normalize(w))
    assert st.tag == "CR" and st.nf.length == 2
    back = normalize(st.conjugator @ st.nf.word() @ st.conjugator.inverse())
    assert back == normalize(w)
    assert cyclically_reduce(NormalForm(rand_basic(rng, Q))).tag == "Basic"


@pytest.mark.parametrize("ctx", FIELDS, ids=str)
def test_cyclic_reduce_conjugator(ctx, rng):
    for _ in range(40):
        nf = normalize(rand_word(rng, ctx), ctx)
        st = cyclically_reduce(nf)
        back = word_to_polymap(st.conjugator @ st.nf.word() @ st.conjugator.inverse(), ctx)
        assert back == nf.to_polymap()
        assert st.tag in ("Basic", "InFactorConjugate", "CR")
        if st.tag == "CR":
            assert st.nf.is_cyclically_reduced()


def test_factor_conjugate(rng):
    e = rand_elementary(rng, Q)
    while e.is_basic():
        e = rand_elementary(rng, Q)
    h = Word((CosetRepA(Q(1)), rep_e(Q, 2)))
    st = cyclically_reduce(normalize(h @ Word((e,)) @ h.inverse()))
    assert st.tag == "InFactorConjugate"


@pytest.mark.parametrize("ctx", FIELDS, ids=str)
def test_text_round_trip(ctx, rng):
    for _ in range(40):
        nf = normalize(rand_word(rng, ctx), ctx)
        assert parse_nf(nf.to_text(), ctx) == nf
        w = rand_word(rng, ctx)
        text = "; ".join(letter_line(g) for g in w)
        assert parse_word(text, ctx) == w


def test_normal_form_validation():
    with pytest.raises(InvalidLetters):
        NormalForm(BasicMap.identity(Q), (CosetRepA(Q(0)), CosetRepA(Q(1))))
    with pytest.raises(InvalidLetters):
        NormalForm(BasicMap.identity(Q), (AffineMap.of(Q, (0, 0), ((0, 1), (1, 0))),))


def test_word_to_polymap_examples(rng):
    assert word_to_polymap(Word(()), Q).is_identity()
    e = rand_elementary(rng, Q)
    assert word_to_polymap(Word((e, e.inverse()))).is_identity()
