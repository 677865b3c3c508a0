from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ocflag.formal import FGLSpecError, FormalGroupLaw

N = 6
LAWS = ["additive", "multiplicative:1", "multiplicative:3/2", "multiplicative:formal", "generic:1", "generic:3"]


@pytest.fixture(scope="module", params=LAWS)
def law(request):
    return FormalGroupLaw.parse(request.param, N)


def test_axioms(law):
    assert all(law.check_axioms().values())


def test_inverse_is_involution(law):
    t = law.ring1.gen(0)
    assert law.inverse_of(law.inverse_of(t)).agrees(t, N)
    assert law.add(t, law.inverse_of(t)).is_zero(N)


def test_g_relation(law):
    t, u = law.ring2.gen(0), law.ring2.gen(1)
    assert (t + u - t * u * law.G).agrees(law.F, N)


def test_additive():
    law = FormalGroupLaw.parse("additive", N)
    t = law.ring1.gen(0)
    assert law.G.is_zero(N)
    assert law.inverse_of(t).agrees(-t, N)


def test_multiplicative_constant_g():
    law = FormalGroupLaw.parse("multiplicative:formal", N)
    assert law.G.agrees(law.ring2.param("kappa"), N)


def test_multiplicative_one_inverse_and_two_series():
    law = FormalGroupLaw.parse("multiplicative:1", N)
    t = law.ring1.gen(0)
    expect = law.ring1.zero()
    for k in range(1, N + 1):
        expect = expect - t ** k
    assert law.inverse_of(t).agrees(expect, N)
    assert law.m_series(2).agrees(2 * t - t * t, N)
    assert law.m_series(1).agrees(t, N)
    assert law.m_series(-1).agrees(law.inverse_of(t), N)


def _sympy_generic_law(depth, order):
    """exp(log t + log u) by sympy series reversion."""
    t, u, y = sympy.symbols("t u y")
    ms = sympy.symbols(f"m1:{depth + 1}")
    log = lambda z: z + sum(m * z ** (k + 2) for k, m in enumerate(ms))  # noqa: E731
    # reversion of log by fixed-point iteration
    exp = y
    for _ in range(order):
        exp = sympy.expand(y - (log(exp) - exp))
        exp = sum(c * y ** k for (k,), c in sympy.Poly(exp, y).terms() if k <= order)
    s = sympy.expand(log(t) + log(u))
    F = sympy.expand(exp.subs(y, s))
    keep = sum(c * t ** a * u ** b for (a, b), c in sympy.Poly(F, t, u).terms() if a + b <= order)
    return keep, ms, (t, u)


def test_generic_law_against_sympy_reversion():
    law = FormalGroupLaw.parse("generic:2", 4)
    F, ms, (t, u) = _sympy_generic_law(2, 4)
    poly = sympy.Poly(F, t, u, *ms)
    names = ("t", "u") + law.params
    ours = {}
    for exps, c in law.F.truncate(4).terms():
        ours[tuple(exps)] = Fraction(str(c))
    theirs = {}
    for exps, c in poly.terms():
        theirs[tuple(exps)] = Fraction(str(c))
    assert len(names) == len(next(iter(ours)))
    assert ours == theirs


def test_generic_depth_one_leading_terms():
    law = FormalGroupLaw.parse("generic:1", N)
    t, u = law.ring2.gen(0), law.ring2.gen(1)
    m1 = law.ring2.param("m1")
    assert law.F.agrees(t + u - 2 * m1 * t * u, 2)
    assert law.G.agrees(2 * m1, 0)


def test_nary_sum():
    law = FormalGroupLaw.parse("generic:2", 5)
    with pytest.raises(ValueError):
        law.nary_sum([])
    assert law.nary_sum([], law.ring1).is_zero()
    t = law.ring1.gen(0)
    assert law.nary_sum([t, t]).agrees(law.m_series(2), 5)
    with pytest.raises(ValueError):
        law.nary_sum([law.ring1.one()])


@pytest.mark.parametrize("bad", ["", "cobordism", "multiplicative:x", "generic:0", "generic:two",
                                 "additive:1"])
def test_bad_specs(bad):
    with pytest.raises(FGLSpecError):
        FormalGroupLaw.validate_spec(bad)


@settings(max_examples=15, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_m_series_additive_in_m(a, b):
    law = FormalGroupLaw.parse("multiplicative:formal", 5)
    assert law.add(law.m_series(a), law.m_series(b)).agrees(law.m_series(a + b), 5)


@settings(max_examples=10, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_multiplicative_kappa_values(k):
    law = FormalGroupLaw.parse(f"multiplicative:{k}", N)
    assert all(law.check_axioms().values())
    t = law.ring1.gen(0)
    assert law.kappa_series().agrees(law.ring1.const(k), N)
    assert law.add(t, law.inverse_of(t)).is_zero(N)
