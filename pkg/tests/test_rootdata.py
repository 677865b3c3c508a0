from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from ocflag.rootdata import (PositionedSubseq, UnsupportedRootSystem, all_subsequences,
                             build_root_system, cartan_matrix)


def brute_positive_roots(rs):
    """Closure of the simple roots under reflections, split by simple-root coordinates."""
    n = rs.rank
    found = set(rs.simple_roots)
    frontier = list(found)
    while frontier:
        new = []
        for r in frontier:
            for i in range(n):
                r2 = tuple(r[k] - r[i] * rs.simple_roots[i][k] for k in range(n))
                if r2 not in found:
                    found.add(r2)
                    new.append(r2)
        frontier = new
    # a root is positive iff its simple coordinates are >= 0; solve via the Cartan matrix
    import numpy as np
    A = np.array(rs.simple_roots, dtype=float).T
    pos = set()
    for r in found:
        coords = np.linalg.solve(A, np.array(r, dtype=float))
        if all(c > -1e-9 for c in coords):
            pos.add(r)
    return pos


@pytest.fixture(scope="module")
def a2s():
    return build_root_system("A", 2, [0])


def test_a2_roots(a2s):
    assert [a2s.root_name(r) for r in range(a2s.npos)] == ["alpha", "beta", "alpha+beta"]
    assert a2s.levi_positive == [0]
    assert set(a2s.positive_roots) == brute_positive_roots(a2s)


def test_a1_simple_root_is_twice_omega():
    rs = build_root_system("A", 1)
    assert rs.simple_roots == [(2,)]
    assert rs.npos == 1


@pytest.mark.parametrize("fam,rank", [("Z", 9), ("A", 9), ("D", 2)])
def test_unsupported(fam, rank):
    with pytest.raises(UnsupportedRootSystem):
        build_root_system(fam, rank)


@pytest.mark.parametrize("fam,rank,npos", [("A", 3, 6), ("B", 2, 4), ("B", 3, 9), ("C", 3, 9), ("G", 2, 6)])
def test_positive_roots_brute_force(fam, rank, npos):
    rs = build_root_system(fam, rank)
    assert rs.npos == npos
    assert set(rs.positive_roots) == brute_positive_roots(rs)


def test_a2_order_and_words(a2s):
    assert [a2s.name(z) for z in range(a2s.order)] == ["e", "s", "t", "ts", "st", "sts"]
    assert a2s.words[a2s.parse_element("sts")] == (0, 1, 0)
    assert a2s.words[0] == ()
    assert a2s.words[a2s.parse_element("ts")] == (1, 0)


def test_group_sizes():
    assert build_root_system("A", 1).order == 2
    assert build_root_system("B", 2).order == 8
    assert build_root_system("A", 3).order == 24


def test_coset_decompose(a2s):
    p = a2s.parse_element
    assert a2s.coset_decompose(p("sts")) == (p("st"), p("s"))
    assert a2s.coset_decompose(0) == (0, 0)
    assert a2s.coset_decompose(p("t")) == (p("t"), 0)


def test_bruhat_examples(a2s):
    p = a2s.parse_element
    assert all(a2s.bruhat_leq(0, w) for w in range(a2s.order))
    assert a2s.bruhat_leq(p("t"), p("st"))
    assert not a2s.bruhat_leq(p("ts"), p("st"))
    assert a2s.length[0] == 0


def test_demazure_and_gamma(a2s):
    assert a2s.demazure_product((0, 1, 1)) == a2s.parse_element("st")
    assert a2s.demazure_product(()) == 0
    assert [a2s.root_name(r) for r in a2s.gamma_sequence((0,))] == ["alpha"]
    assert [a2s.root_name(r) for r in a2s.gamma_sequence((0, 1))] == ["alpha", "alpha+beta"]


def test_weight_action(a2s):
    s, t = a2s.parse_element("s"), a2s.parse_element("t")
    a, b = a2s.simple_roots
    assert a2s.act_on_weight(s, a) == tuple(-c for c in a)
    assert a2s.act_on_weight(s, (0, 1)) == (0, 1)
    assert a2s.act_on_weight(t, a) == tuple(x + y for x, y in zip(a, b))


def test_cartan_b2_convention():
    assert cartan_matrix("B", 2) == ((2, -1), (-2, 2))


@pytest.mark.parametrize("fam,rank", [("A", 2), ("B", 2), ("A", 3), ("G", 2)])
def test_table_invariants(fam, rank):
    for size in range(rank + 1):
        for par in _subsets(rank, size):
            rs = build_root_system(fam, rank, par)
            assert rs.word_table_problems() == []
            for z in range(rs.order):
                I = rs.words[z]
                assert rs.word_product(I) == z
                assert len(I) == rs.length[z] == rs.inversion_count(z)
                assert rs.demazure_product(I) == z
                w, v = rs.decomp[z]
                assert rs.length[z] == rs.length[w] + rs.length[v]
                assert I == rs.words[w] + rs.words[v]
                gam = rs.gamma_sequence(I)
                assert len(set(gam)) == len(gam) and all(rs.is_positive(g) for g in gam)


def _subsets(n, k):
    from itertools import combinations
    return [frozenset(c) for c in combinations(range(n), k)]


@pytest.mark.parametrize("fam,rank", [("A", 2), ("B", 2), ("A", 3)])
def test_bruhat_matches_subword_criterion(fam, rank):
    rs = build_root_system(fam, rank)
    for w in range(rs.order):
        subs = {rs.word_product(s.letters()) for s in all_subsequences(rs.words[w])}
        for u in range(rs.order):
            assert rs.bruhat_leq(u, w) == (u in subs)


def test_order_extends_bruhat_within_factors():
    rs = build_root_system("A", 3, [0, 2])
    reps = rs.min_reps
    for i, j in product(range(len(reps)), repeat=2):
        if rs.bruhat_lt(reps[i], reps[j]):
            assert i < j


def test_word_override_rejected():
    rs = build_root_system("A", 2)
    bad = type(rs)("A", 2, (), words={(0, 1, 0): (0, 0, 0)})
    assert bad.word_table_problems()
    ok = type(rs)("A", 2, (), words={rs.parse_element("sts"): (1, 0, 1)})
    assert ok.word_table_problems() == []
    assert ok.name(rs.parse_element("sts")) == "tst"


def test_positioned_subseq_meet_uses_positions():
    ref = (0, 1, 0)
    first = PositionedSubseq(ref, frozenset({0}))
    last = PositionedSubseq(ref, frozenset({2}))
    assert first.letters() == last.letters()
    assert len(first.meet(last)) == 0
    assert first.join(last).issubseq(PositionedSubseq.full(ref))
    assert len(all_subsequences(ref)) == 8


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=8))
def test_demazure_product_is_a_monoid_fold(word):
    rs = build_root_system("A", 3)
    left = rs.demazure_product(word)
    # appending the same letter twice changes nothing beyond the first time
    for i in range(3):
        once = rs.demazure_product(list(word) + [i])
        assert rs.demazure_product(list(word) + [i, i]) == once
        assert rs.bruhat_leq(left, once)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 23), st.integers(0, 23))
def test_length_subadditive(u, v):
    rs = build_root_system("A", 3)
    uv = rs.word_product(rs.words[u] + rs.words[v])
    assert rs.length[uv] <= rs.length[u] + rs.length[v]
    assert (rs.length[uv] - rs.length[u] - rs.length[v]) % 2 == 0
