import random

import pytest

from ga2.algebra import FieldCtx, UniPoly
from ga2.amalgam import NormalForm, Word, cyclically_reduce, normalize, poly_degree, to_normal_form
from ga2.conjugacy import linearize_involution
from ga2.errors import (CapExceeded, CharacteristicTwo, EvenPolynomial, FourthRootPresent,
                        InconsistentCertificates, InvalidLetters, NotAnAutomorphism,
                        NotCyclicallyReduced, NotFixedPoint, ReversorCheckFailed,
                        UnsupportedField, ZeroGamma)
from ga2.generators import AffineMap, BasicMap, CosetRepA, CosetRepE, ElementaryMap
from ga2.parsing import parse_map_expr
from ga2.sampling import rand_crnf, rand_involutory_params, rand_order4_params, rand_rep_e
from ga2.symmetry import (GroupStructureTag, ReversorWitness, SymWitness,
                          build_reversible_involutory, build_reversible_order4,
                          classify_reversing_group, factor_by_reversor,
                          fixed_point_spectrum_check, involutory_symmetry_of_crnf, is_reversor,
                          is_symmetry, quarter_turn, reversibility_necessary, reversor_order,
                          swap_map, symmetry_nf_check)

from conftest import Q

F3, F7 = FieldCtx(3), FieldCtx(7)
CUBE = CosetRepE(UniPoly(Q, [0, 1]))  # x + y^3


def m(text, ctx=Q):
    return parse_map_expr(text, ctx)


def nf(text, ctx=Q):
    return to_normal_form(m(text, ctx))


def translate(ctx, u, v):
    return AffineMap.of(ctx, (u, v), ((1, 0), (0, 1)))


def e_t_einv_t():
    return build_reversible_involutory([CUBE], 1)


def test_is_symmetry_examples():
    I = m("(-x, -y)")
    assert is_symmetry(m("(y, x + y^3)"), I)
    assert not is_symmetry(m("(y, x + y^2)"), I)
    f = m("(y, -x + y^2 + 1)")
    assert is_symmetry(f, f)
    with pytest.raises(NotAnAutomorphism):
        is_symmetry(f, m("(x^3, y)"))


def test_is_reversor_examples():
    f, w = e_t_einv_t()
    assert is_reversor(f, swap_map(Q))
    R = quarter_turn(Q)
    e = CUBE.as_elementary()
    g = normalize(Word((R, e, R, e.inverse())))
    assert is_reversor(g, R)
    assert not is_reversor(m("(y, x + y^3)"), m("(x, y)"))


def test_involutory_symmetry_examples():
    assert involutory_symmetry_of_crnf(nf("(y, x + y^3)")) == SymWitness(Q(0), Q(0))
    assert involutory_symmetry_of_crnf(nf("(y, x + y^2)")) is None
    t = translate(Q, 1, 2)
    g = normalize(Word((t,)) @ nf("(y, x + y^3 - y)").word() @ Word((t.inverse(),)))
    assert involutory_symmetry_of_crnf(g) == SymWitness(Q(2), Q(4))


def test_involutory_symmetry_errors():
    with pytest.raises(NotCyclicallyReduced):
        involutory_symmetry_of_crnf(normalize(Word((CUBE,))))
    g2 = to_normal_form(m("(y, x + y^3)", FieldCtx(2)))
    with pytest.raises(CharacteristicTwo):
        involutory_symmetry_of_crnf(g2)


def _brute_witnesses(g):
    ctx = g.ctx
    f = g.to_polymap()
    out = []
    for u in ctx.elements():
        for v in ctx.elements():
            s = SymWitness(u, v).as_affine().polymap
            if s.compose(f) == f.compose(s):
                out.append((u, v))
    return out


@pytest.mark.parametrize("p", [3, 5, 7])
def test_involutory_symmetry_against_exhaustive_search(p):
    ctx = FieldCtx(p)
    rng = random.Random(p)
    for k in range(25):
        if k % 2:
            g = rand_crnf(rng, ctx, max_pairs=2)
        else:
            # plant a symmetry: odd letters, linear lead, then conjugate by a translation
            letters = (CosetRepA(ctx(rng.randrange(p))), rand_rep_e(rng, ctx, odd=True))
            base = NormalForm(BasicMap.of(ctx, -1 if k % 4 else 1, 1), letters)
            t = translate(ctx, rng.randrange(p), rng.randrange(p))
            g = normalize(Word((t,)) @ base.word() @ Word((t.inverse(),)), ctx)
        w = involutory_symmetry_of_crnf(g)
        brute = _brute_witnesses(g)
        if w is None:
            assert brute == []
        else:
            assert (w.u, w.v) in brute


def test_symmetry_nf_check_examples():
    a = CosetRepA(Q(0))
    e3, e5 = CosetRepE(UniPoly(Q, [0, 1])), CosetRepE(UniPoly(Q, [0, 0, 0, 1]))
    good = NormalForm(BasicMap.of(Q, 2, 3, 1), (a, e3, a, e5))
    assert symmetry_nf_check(good)
    assert not symmetry_nf_check(nf("(y, -x + y^2 + 1)"))
    shifted = NormalForm(BasicMap.of(Q, 2, 3, 1, 1, 0), (a, e3, a, e5))
    assert not symmetry_nf_check(shifted)
    # the shape test implies the origin-fixing witness
    assert involutory_symmetry_of_crnf(good) == SymWitness(Q(0), Q(0))


def test_symmetry_nf_check_implies_witness():
    rng = random.Random(4)
    for _ in range(20):
        g = rand_crnf(rng, Q, max_pairs=2)
        odd = tuple(CosetRepE(UniPoly(Q, [c if k % 2 == 1 else 0 for k, c in enumerate(c0.P.coeffs)]
                                      or [0, 1]))
                    if c0.factor == "E" and any(c0.P.coeffs[1::2]) else
                    (CosetRepE(UniPoly(Q, [0, 1])) if c0.factor == "E" else c0)
                    for c0 in g.letters)
        h = NormalForm(BasicMap.of(Q, g.b.alpha, g.b.beta, g.b.gamma), odd)
        assert symmetry_nf_check(h)
        assert involutory_symmetry_of_crnf(h) == SymWitness(Q(0), Q(0))


def _pd_crnf(degrees):
    letters = []
    for d in degrees:
        letters += [CosetRepA(Q(0)), CosetRepE(UniPoly.monomial(Q, d - 2))]
    return NormalForm(BasicMap.identity(Q), tuple(letters))


def test_reversibility_necessary_examples():
    assert not reversibility_necessary(_pd_crnf((2, 3, 4)))
    assert reversibility_necessary(_pd_crnf((2, 3, 2, 3)))
    assert reversibility_necessary(nf("(y, -x + y^2 + 1)"))
    assert not reversibility_necessary(nf("(y, -2*x + y^2 + 1)"))


def test_build_involutory_examples():
    f, w = e_t_einv_t()
    assert w.order == 2 and is_reversor(f, w.r)
    assert f == normalize(Word((CUBE, swap_map(Q), CUBE.inverse(), swap_map(Q))))
    hat = ElementaryMap.of(Q, -1, -1, 0, [0, 0, 1])
    bar = ElementaryMap.of(Q, -1, -1, 0, [0, 0, 3, 0, 1])
    f3, w3 = build_reversible_involutory([CosetRepA(Q(1))], 3, hat=hat, bar=bar)
    assert f3.det() == Q(1) and is_reversor(f3, w3.r)


def test_build_involutory_palindromic_pd():
    a = CosetRepA(Q(2))
    e2, e3 = CosetRepE(UniPoly(Q, [1])), CosetRepE(UniPoly(Q, [0, 1]))
    f, _ = build_reversible_involutory([e3, a, e2], 1)
    assert poly_degree(f) == (3, 2, 2, 3)
    hat = ElementaryMap.of(Q, -1, 1, 0, [0, 0, 0, 0, 1])  # degree 4
    f, _ = build_reversible_involutory([e3, a, e2, a], 2, hat=hat)
    st = cyclically_reduce(f)
    assert poly_degree(st.nf) in {(3, 2, 4, 2, 3)[k:] + (3, 2, 4, 2, 3)[:k] for k in range(5)}


def test_build_involutory_rejects_bad_letters():
    with pytest.raises(InvalidLetters):
        build_reversible_involutory([CosetRepA(Q(0))], 1)
    not_invol = ElementaryMap.of(Q, 1, 1, 0, [0, 0, 1])
    with pytest.raises(InvalidLetters):
        build_reversible_involutory([CUBE, CosetRepA(Q(0))], 2, hat=not_invol)
    with pytest.raises(InvalidLetters):
        build_reversible_involutory([CUBE, CUBE], 1)


def test_build_order4_examples():
    f, w = build_reversible_order4([CUBE], [], 0, 1)
    assert w.order == 4
    assert is_reversor(f, w.r)
    R = quarter_turn(Q)
    assert w.r == normalize(Word((AffineMap.linear(-R.M),)))
    e3, e5 = CUBE, CosetRepE(UniPoly(Q, [0, 0, 0, 1]))
    f, _ = build_reversible_order4([e5, e3], [CosetRepA(Q(1))], 2, 3)
    assert poly_degree(f) == (5, 3, 3, 5)
    assert f.det() == Q(1)


def test_build_order4_errors():
    with pytest.raises(FourthRootPresent):
        build_reversible_order4([CosetRepE(UniPoly(FieldCtx(5), [0, 1]))], [], 0, 1)
    with pytest.raises(EvenPolynomial):
        build_reversible_order4([CosetRepE(UniPoly(Q, [1]))], [], 0, 1)
    with pytest.raises(ZeroGamma):
        build_reversible_order4([CUBE], [], 0, 0)


@pytest.mark.parametrize("ctx", [Q, F3, F7], ids=str)
def test_builder_invariants(ctx):
    rng = random.Random(17 + ctx.p)
    for _ in range(12):
        f, w = build_reversible_involutory(**rand_involutory_params(rng, ctx))
        V, squares_match = factor_by_reversor(f, w.r)
        assert squares_match
        assert is_reversor(f, V)
        # two reversors compose to a symmetry
        assert is_symmetry(f, V @ w.r)
        assert is_reversor(f.inverse(), w.r) and is_reversor(f, w.r.inverse())
        st = cyclically_reduce(f)
        assert st.tag == "CR" and reversibility_necessary(st.nf)

        g, r4 = build_reversible_order4(**rand_order4_params(rng, ctx))
        assert g.det() == ctx.one
        _, squares_match = factor_by_reversor(g, r4.r)
        assert squares_match
        sq = r4.r @ r4.r
        assert is_symmetry(g, sq)
        assert linearize_involution(sq).kind == "I"
        assert reversibility_necessary(cyclically_reduce(g).nf)
        pd = poly_degree(g)
        assert pd == pd[::-1] and all(n % 2 for n in pd)


def test_reversor_order_examples():
    f, w = e_t_einv_t()
    assert reversor_order(f, swap_map(Q)) == 2
    g, r4 = build_reversible_order4([CUBE], [], 0, 1)
    assert reversor_order(g, r4.r) == 4
    with pytest.raises(ReversorCheckFailed):
        reversor_order(f, m("(-x, -y)"))
    with pytest.raises(CapExceeded):
        reversor_order(g, r4.r, cap=3)


def test_fixed_point_spectrum():
    f, w = e_t_einv_t()
    origin = (Q(0), Q(0))
    assert fixed_point_spectrum_check(f.to_polymap(), w.r.to_polymap(), origin)
    # direct Jacobians at the origin
    J = f.to_polymap().jacobian_at(origin)
    assert J.det() * J.det() == Q(1)
    with pytest.raises(NotFixedPoint):
        fixed_point_spectrum_check(f, w.r, (Q(1), Q(5)))
    with pytest.raises(ReversorCheckFailed):
        fixed_point_spectrum_check(f, m("(-x, -y)"), origin)


def test_linear_reversible_spectrum():
    L = m("(2*x, 1/2*y)")
    assert fixed_point_spectrum_check(L, m("(y, x)"), (Q(0), Q(0)))


def test_order4_output_has_involutory_symmetry():
    rng = random.Random(8)
    for _ in range(6):
        g, _ = build_reversible_order4(**rand_order4_params(rng, Q, max_pairs=1, max_deg=1))
        assert involutory_symmetry_of_crnf(cyclically_reduce(g).nf) is not None


def _even_form1():
    return build_reversible_involutory([CosetRepE(UniPoly(Q, [1]))], 1)


def test_classify_examples():
    g, r4 = build_reversible_order4([CUBE], [], 0, 1)
    assert classify_reversing_group(g, None, [r4]) == GroupStructureTag.CinfRtimesC4
    f, w = e_t_einv_t()
    assert is_symmetry(f, m("(-x, -y)"))
    assert classify_reversing_group(f, SymWitness(Q(0), Q(0)), [w]) == GroupStructureTag.CinfxC2RtimesC2
    f, w = _even_form1()
    assert not is_symmetry(f, m("(-x, -y)"))
    assert classify_reversing_group(f, None, [w]) == GroupStructureTag.Dinf
    assert classify_reversing_group(f) == GroupStructureTag.UnknownOrIrreversible
    h = nf("(y, x + y^3)")
    assert classify_reversing_group(h, SymWitness(Q(0), Q(0))) == GroupStructureTag.C2xCinf


def test_classify_rejects_bad_certificates():
    f, w = _even_form1()
    with pytest.raises(InconsistentCertificates):
        classify_reversing_group(f, None, [ReversorWitness(w.r, 4)])
    with pytest.raises(InconsistentCertificates):
        classify_reversing_group(f, SymWitness(Q(0), Q(0)))
    g = to_normal_form(m("(y, x + y^3)", F3))
    with pytest.raises(UnsupportedField):
        classify_reversing_group(g)


def test_certificate_text_round_trip():
    w = SymWitness(Q(2), Q(-1) / 3)
    assert w.to_text() == "SYM u=2 v=-1/3"
    assert SymWitness.from_text(w.to_text(), Q) == w
    _, r = build_reversible_order4([CUBE], [], 0, 1)
    assert ReversorWitness.from_text(r.to_text(), Q) == r
    assert r.to_text().startswith("REV order=4 word=B ")
    assert GroupStructureTag.Dinf.to_text() == "GROUP tag=Dinf"
