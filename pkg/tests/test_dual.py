"""The fixed-point model of D^*: bullet action, classes, dual bases and pairings."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from ocflag.config import build
from ocflag.twisted import QW, mul_qw

N = 4


@pytest.fixture(scope="module", params=["additive", "generic:2"])
def a2(request):
    return build("A", 2, (), request.param, N, x_convention="definition")


@pytest.fixture(scope="module")
def a2s():
    return build("A", 2, (0,), "generic:1", N)


@pytest.fixture(scope="module")
def a1():
    return build("A", 1, (), "multiplicative:formal", N)


@pytest.fixture(scope="module")
def a1g():
    return build("A", 1, (0,), "multiplicative:formal", N)


def rand_series(S, rng, degree=2):
    out = S.zero()
    for _ in range(3):
        exps = [rng.randint(0, degree) for _ in range(S.rs.rank)]
        if sum(exps) <= degree:
            out = out + S.ring.monomial(exps, rng.randint(-2, 2))
    return out


def rand_dual(ctx, rng):
    D = ctx.D
    return D.rebuild({x: rand_series(ctx.S, rng) for x in D.W}, "Y")


def test_pointwise_ring(a2):
    D = a2.D
    s = a2.rs.parse_element("s")
    assert (D.f_point(0) * D.f_point(0)).equals(D.f_point(0))
    assert (D.f_point(0) * D.f_point(s)).equals(D.from_values({}))
    total = D.f_point(0)
    for z in D.W[1:]:
        total = total + D.f_point(z)
    assert total.equals(D.one())


def test_bullet_by_deltas(a2):
    D, rs, T = a2.D, a2.rs, a2.T
    f = D.f_point(rs.parse_element("st"))
    assert D.bullet(T.one(), f).equals(f)
    for y in D.W:
        y_inv = next(x for x in D.W if rs.mult[y][x] == 0)
        for z in D.W:
            got = D.bullet(T.delta(y), D.f_point(z))
            assert got.equals(D.f_point(rs.mult[z][y_inv]))


def test_a1_bullet_and_classes(a1):
    D, rs, T, Q = a1.D, a1.rs, a1.T, a1.Q
    s = rs.parse_element("s")
    inv = Q.inv_x(rs.neg_root(0))
    expect = (D.f_point(0) + D.f_point(s)) * inv
    assert D.bullet(T.y_of(0), D.f_point(0)).equals(expect)
    assert D.y_times(s).equals(D.one())
    assert D.y_times(0).equals(D.f_point(0) * Q.from_S(a1.S.x_full()))
    assert D.dual(s, "Y").equals(D.f_point(s) * Q.x(0))
    assert D.pairing(D.y_times(0), D.dual(0, "Y")).agrees(a1.S.one(), N)


def test_classes_supported_below(a2):
    D, rs = a2.D, a2.rs
    for fam in ("Y", "X"):
        for z in D.W:
            f = D.times(z, fam, check=True)
            assert all(rs.bruhat_leq(y, z) for y, v in f.vals.items() if not v.is_zero())


def test_x_e_dual_is_one(a2):
    assert a2.D.dual(0, "X").equals(a2.D.one())


def test_dual_bases_pair_to_delta(a2):
    D, S = a2.D, a2.S
    for fam in ("Y", "X"):
        for z in D.W:
            for w in D.W:
                val = D.pairing(D.times(z, fam), D.dual(w, fam))
                assert val.agrees(S.one() if z == w else S.zero(), N)


def test_expand_in(a2):
    D, T, S = a2.D, a2.T, a2.S
    s = a2.rs.parse_element("s")
    got = D.expand_in(D.dual(s, "Y"), "Y")
    assert set(x for x, c in got.items() if not c.is_zero(N)) == {s}
    assert got[s].agrees(S.one(), N)
    coeffs = D.expand_in(D.one(), "Y")
    for x in D.W:
        expect = T.act_on(T.basis_element("Y", x), S.one()).to_S()
        assert coeffs.get(x, S.zero()).agrees(expect, N)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_expand_rebuild_roundtrip(seed):
    ctx = build("A", 2, (), "generic:1", N)
    rng = random.Random(seed)
    coeffs = {x: rand_series(ctx.S, rng) for x in ctx.D.W}
    for fam in ("Y", "X"):
        got = ctx.D.expand_in(ctx.D.rebuild(coeffs, fam), fam)
        for x in ctx.D.W:
            assert got.get(x, ctx.S.zero()).agrees(coeffs[x], N)


def test_pairing_bilinear(a2):
    rng = random.Random(1)
    D, S, Q = a2.D, a2.S, a2.Q
    f, g, h = rand_dual(a2, rng), rand_dual(a2, rng), rand_dual(a2, rng)
    p = rand_series(S, rng)
    lhs = D.pairing(f * Q.from_S(p) + g, h)
    rhs = p * D.pairing(f, h) + D.pairing(g, h)
    assert lhs.agrees(rhs, N)


def test_project_parab_trivial_and_full(a2, a1g):
    rng = random.Random(2)
    f = rand_dual(a2, rng)
    assert a2.D.project_parab(f).equals(f)
    D = a1g.D
    assert D.project_parab(D.y_times(0)).equals(D.one())
    assert D.z_star(0).equals(D.one())


def test_projection_lands_in_invariants(a2s):
    rng = random.Random(4)
    D = a2s.D
    for _ in range(3):
        assert D.is_WL_invariant(D.project_parab(rand_dual(a2s, rng)))


def test_parabolic_pairing_adjoint(a2s):
    rng = random.Random(5)
    D = a2s.D
    f = rand_dual(a2s, rng)
    inv = D.project_parab(rand_dual(a2s, rng))
    assert D.pairing(inv, f).agrees(D.pairing_parab(inv, D.project_parab(f), check=True), N)
    g = rand_dual(a2s, rng)
    assert D.pairing(D.project_parab(f), g).agrees(D.pairing(f, D.project_parab(g)), N)
    with pytest.raises(ValueError):
        D.pairing_parab(f, inv, check=True)


def test_parabolic_pairing_for_borel(a2):
    rng = random.Random(6)
    f, g = rand_dual(a2, rng), rand_dual(a2, rng)
    assert a2.D.pairing_parab(f, g).agrees(a2.D.pairing(f, g), N)


def test_z_star(a2, a2s):
    for w in a2.rs.min_reps:
        assert a2.D.z_star(w).equals(a2.D.dual(w, "Y"))
    D, rs, S = a2s.D, a2s.rs, a2s.S
    t, ts = rs.parse_element("t"), rs.parse_element("ts")
    coeffs = D.expand_in(D.z_star(t), "Y")
    assert coeffs[ts].agrees(S.kappa(2), N)
    assert coeffs[t].agrees(S.one(), N)
    for w in rs.min_reps:
        for w2 in rs.min_reps:
            val = D.pairing_parab(D.z_star(w), D.yp_times(w2))
            assert val.agrees(S.one() if w == w2 else S.zero(), N)


def test_levi_restriction_and_section(a2s):
    D, rs = a2s.D, a2s.rs
    s = rs.parse_element("s")
    for z in D.W:
        if z not in rs.levi:
            r = D.restrict_L(D.dual(z, "Y"))
            assert all(v.is_zero() for v in r.vals.values())
    for fam in ("Y", "X"):
        for g in D.levi_duals(fam):
            assert D.restrict_L(D.section_j_a(g, fam)).equals(g)
    assert D.section_j_a(D.levi_duals("X")[rs.levi.index(s)], "X").equals(D.dual(s, "X"))


def test_char_map(a2):
    D, S, rs, Q = a2.D, a2.S, a2.rs, a2.Q
    assert D.char_map(S.one()).equals(D.one())
    lam = (1, -1)
    f = D.char_map(S.x_of_weight(lam))
    for w in D.W:
        assert f.value(w).to_S().agrees(S.x_of_weight(rs.act_on_weight(w, lam)), N)
    assert D.borel_rho(S.one(), S.one()).equals(D.one())
    p = S.gen(0) + 3
    assert D.borel_rho(p, S.one()).equals(D.const(Q.from_S(p)))
    assert D.char_map_bullet(p).equals(D.char_map(p))


def test_char_map_equivariant(a2):
    D, S = a2.D, a2.S
    rng = random.Random(8)
    p = rand_series(S, rng)
    for z in D.W:
        assert D.char_map(S.weyl_act(z, p)).equals(D.act(z, D.char_map(p)))


def test_rho_surjective_a2():
    ctx = build("A", 2, (), "generic:2", N)
    rep = ctx.D.rho_surjectivity_check(3)
    assert rep["surjective"] and rep["rank"] == 6


def test_characters(a2s, a1g):
    D, S, rs = a2s.D, a2s.S, a2s.rs
    full, levi = D.character_trace(0)
    assert full.agrees(S.const(rs.order), N)
    nreps = len(rs.min_reps)
    for v in rs.levi:
        full, levi = D.character_trace(v)
        assert full.agrees(levi * nreps, N)
    with pytest.raises(ValueError):
        D.character_trace(rs.parse_element("t"))
    # A1 with L = G: trace of s. on the rank-2 module spanned by Y_e^*, Y_s^*
    D1 = a1g.D
    s = a1g.rs.parse_element("s")
    full, _ = D1.character_trace(s)
    acted = [D1.expand_in(D1.act(s, D1.dual(x, "Y")), "Y") for x in D1.W]
    by_hand = sum((acted[x].get(x, a1g.S.zero()) for x in D1.W), a1g.S.zero())
    assert full.agrees(by_hand, N)


def test_bullet_is_an_action(a2):
    rng = random.Random(9)
    D, T, Q = a2.D, a2.T, a2.Q
    f = rand_dual(a2, rng)
    g = rand_dual(a2, rng)
    h1, h2 = T.y_of(0), T.x_of(1)
    assert D.bullet(mul_qw(h1, h2), f).equals(D.bullet(h1, D.bullet(h2, f)))
    q = Q.from_S(rand_series(a2.S, rng))
    for v in D.W:
        assert D.act(v, f * g).equals(D.act(v, f) * D.act(v, g))
        assert D.act(v, f * q).equals(D.act(v, f) * q)
        assert D.bullet(T.delta(v), f).equals(D.act(v, f))
    assert D.bullet(QW(Q, {0: q}), f).equals(f * q)
