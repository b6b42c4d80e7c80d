from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ga2.algebra import (INFINITE, BiPoly, FieldCtx, Scalar, UniPoly, bipoly_compose,
                         field_arith, has_primitive_fourth_root, is_odd_poly, leading_form,
                         mult_order, total_degree)
from ga2.errors import (CharacteristicTwo, DivisionByZero, FieldMismatch, InvalidField,
                        ZeroInput, ZeroPolynomial)
from ga2.parsing import parse_poly, parse_unipoly

from conftest import FIELDS, Q, bipolys, scalars, unipolys

F7 = FieldCtx(7)


def poly(text, ctx=Q):
    return parse_poly(text, ctx)


def test_field_arith_examples():
    assert field_arith(Q(Fraction(1, 2)), Q(Fraction(1, 3)), "add") == Q(Fraction(5, 6))
    assert field_arith(F7(4), F7(5), "mul") == F7(6)
    with pytest.raises(DivisionByZero):
        field_arith(Q(3), Q(0), "div")
    with pytest.raises(FieldMismatch):
        field_arith(Q(1), F7(1), "add")


def test_field_ctx_validation():
    assert FieldCtx.parse("Fp:7") == F7
    assert FieldCtx.parse("Q").characteristic == 0
    for bad in ("Fp:4", "Fp:x", "R"):
        with pytest.raises(InvalidField):
            FieldCtx.parse(bad)


def test_rationals_stay_reduced():
    s = Q(Fraction(6, -4))
    assert s.value == Fraction(-3, 2) and s.value.denominator > 0
    assert F7(-1).value == 6


@pytest.mark.parametrize("ctx", FIELDS, ids=str)
def test_field_axioms(ctx):
    @given(scalars(ctx), scalars(ctx), scalars(ctx))
    def check(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == ctx.zero
        if not a.is_zero():
            assert a * a.inverse() == ctx.one
    check()


def _brute_order(u, limit=200):
    acc = u
    for n in range(1, limit + 1):
        if acc.is_one():
            return n
        acc = acc * u
    return INFINITE


def test_mult_order_examples():
    assert mult_order(Q(-1)) == 2
    assert mult_order(Q(2)) is INFINITE
    assert mult_order(F7(3)) == 6
    with pytest.raises(ZeroInput):
        mult_order(Q(0))


@pytest.mark.parametrize("ctx", FIELDS, ids=str)
def test_mult_order_matches_powering(ctx):
    values = ctx.elements() if ctx.p else [ctx(Fraction(n, d)) for n in range(-4, 5)
                                           for d in (1, 2, 3)]
    for u in values:
        if not u.is_zero():
            assert mult_order(u) == _brute_order(u)


def test_fourth_roots():
    assert not has_primitive_fourth_root(Q)
    assert has_primitive_fourth_root(FieldCtx(5))
    assert not has_primitive_fourth_root(F7)
    for ctx in (FieldCtx(3), FieldCtx(5), F7, FieldCtx(13)):
        brute = any((u * u) == ctx(-1) for u in ctx.elements())
        assert has_primitive_fourth_root(ctx) == brute


def test_bipoly_compose_examples():
    x, y = BiPoly.x(Q), BiPoly.y(Q)
    assert bipoly_compose(x * y, x + 1, y) == poly("x*y + y")
    assert bipoly_compose(x ** 2, y, x) == poly("y^2")
    henon_q = poly("-x + y^2 + 1")
    assert bipoly_compose(poly("x + y^2"), y, henon_q) == y + henon_q ** 2


def test_degree_and_leading_form_examples():
    assert total_degree(poly("x^2*y + y^2")) == 3
    assert total_degree(poly("5")) == 0
    assert total_degree(poly("-x + y^2 + 1")) == 2
    assert leading_form(poly("-x + y^2 + 1")) == poly("y^2")
    assert leading_form(poly("x^2*y + x*y^2 + x")) == poly("x^2*y + x*y^2")
    assert leading_form(poly("x^3 + y^3")) == poly("x^3 + y^3")
    with pytest.raises(ZeroPolynomial):
        total_degree(BiPoly(Q))
    with pytest.raises(ZeroPolynomial):
        leading_form(BiPoly(Q))


def test_odd_poly_examples():
    assert is_odd_poly(parse_unipoly("y^3 - 2*y", Q))
    assert not is_odd_poly(parse_unipoly("y^2", Q))
    for p in (3, 5, 7):
        assert is_odd_poly(parse_unipoly(f"y^{p} - y", FieldCtx(p)))
    with pytest.raises(CharacteristicTwo):
        is_odd_poly(parse_unipoly("y", FieldCtx(2)))


@pytest.mark.parametrize("ctx", FIELDS, ids=str)
def test_compose_associative(ctx):
    @given(*(bipolys(ctx, max_deg=2, max_terms=3) for _ in range(6)), bipolys(ctx, 2, 3),
           bipolys(ctx, 2, 3))
    def check(F1, F2, G1, G2, H1, H2, A, B):
        # (F o G) o H versus F o (G o H) on the pair maps
        GH = (bipoly_compose(G1, H1, H2), bipoly_compose(G2, H1, H2))
        left = bipoly_compose(bipoly_compose(A, G1, G2), H1, H2)
        right = bipoly_compose(A, *GH)
        assert left == right
    check()


@pytest.mark.parametrize("ctx", [Q, F7], ids=str)
def test_degree_additive(ctx):
    @given(bipolys(ctx), bipolys(ctx))
    def check(F, G):
        if F.is_zero() or G.is_zero():
            return
        assert total_degree(F * G) == total_degree(F) + total_degree(G)
    check()


@pytest.mark.parametrize("ctx", [Q, F7], ids=str)
def test_odd_poly_evaluates_odd(ctx):
    @given(unipolys(ctx), st.lists(scalars(ctx), min_size=20, max_size=20))
    def check(P, points):
        odd = UniPoly(ctx, [c if k % 2 else 0 for k, c in enumerate(P.coeffs)])
        assert is_odd_poly(odd)
        for t in points:
            assert odd(-t) == -odd(t)
    check()


def test_canonical_printing():
    assert str(poly("1 + y^2 - x")) == "y^2 - x + 1"
    assert str(poly("x*y^2 + x^2*y + y^3")) == "x^2*y + x*y^2 + y^3"
    assert str(poly("1/2*x", Q)) == "1/2*x"
