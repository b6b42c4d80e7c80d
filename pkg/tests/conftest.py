import random
import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from ga2.algebra import BiPoly, FieldCtx, UniPoly

settings.register_profile("ga2", max_examples=60, deadline=None)
settings.load_profile("ga2")

Q = FieldCtx(0)
FIELDS = [Q, FieldCtx(3), FieldCtx(5), FieldCtx(7)]


def scalars(ctx, nonzero=False):
    if ctx.p:
        lo = 1 if nonzero else 0
        return st.integers(lo, ctx.p - 1).map(ctx)
    s = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))
    if nonzero:
        s = s.filter(bool)
    return s.map(ctx)


def unipolys(ctx, max_deg=4):
    return st.lists(scalars(ctx), max_size=max_deg + 1).map(lambda cs: UniPoly(ctx, cs))


def bipolys(ctx, max_deg=3, max_terms=5):
    exps = st.tuples(st.integers(0, max_deg), st.integers(0, max_deg)).filter(
        lambda e: sum(e) <= max_deg)
    return st.dictionaries(exps, scalars(ctx), max_size=max_terms).map(lambda t: BiPoly(ctx, t))


@pytest.fixture
def rng():
    return random.Random(20240917)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
