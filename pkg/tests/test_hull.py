"""Dual-route tests for the left-inverse-hull engine.

Element counts are verified two independent ways.  The engine composes
multiply/divide moves symbolically through the enveloping group; the oracle
composes literal partial maps on a truncated universe and deduplicates by
the graph restricted to a core region that truncation cannot distort.  The
margins used here were chosen by stability: each count is asserted twice,
under two universe/core sizes, so an accidental truncation artifact would
show up as a mismatch.
"""

import pytest

from oracles import census, free_moves, idempotent_domains, shift_moves

from invhull import Hull, preset
from invhull.hull import (
    IntIdeal,
    ideal_equal,
    independence_check,
    inverse_semigroup_check,
    right_lcm_check,
    sigma_check,
    toeplitz_check,
)


@pytest.fixture(scope="module")
def hull_n():
    return Hull(preset("free_abelian", n=1, letters="a"))


@pytest.fixture(scope="module")
def hull_nn():
    return Hull(preset("free_abelian", n=2))


@pytest.fixture(scope="module")
def hull_free():
    return Hull(preset("free"))


@pytest.fixture(scope="module")
def hull_num():
    return Hull(preset("numerical", generators=(2, 3)))


@pytest.fixture(scope="module")
def hull_bs():
    return Hull(preset("bs", k=2, l=3))


# ---------------------------------------------------------------------------
# element algebra


def test_identity_and_moves(hull_free):
    h = hull_free
    e = h.identity_element()
    assert h.is_idempotent(e)
    assert h.describe_cset(e.cset) == "P"
    w = h.ctx.parse("ab")
    assert h.describe_cset(h.multiply_move(w).cset) == "P"
    assert h.describe_cset(h.divide_move(w).cset) == "a bP"


def test_inverse_swaps_source_and_range(hull_free):
    h = hull_free
    s = h.multiply_move(h.ctx.parse("ab"))
    si = h.inverse(s)
    assert h.compose(s, si) == h.range_idempotent(s)
    assert h.compose(si, s) == h.source_idempotent(s)
    assert h.inverse(si) == s


def test_zero_is_a_single_interned_element(hull_free):
    h = hull_free
    P = h.ctx.parse
    z1 = h.compose(h.divide_move(P("a")), h.multiply_move(P("b")))
    z2 = h.compose(h.divide_move(P("b")), h.multiply_move(P("a")))
    assert h.is_zero(z1) and h.is_zero(z2)
    assert z1 is z2  # every empty domain collapses to one object
    assert h.is_idempotent(z1)
    assert h.sigma(z1) == h.group.identity()
    assert h.describe_cset(z1.cset) == "empty"
    t = h.multiply_move(P("ab"))
    assert h.is_zero(h.compose(z1, t))
    assert h.is_zero(h.compose(t, z1))
    assert h.is_zero(h.inverse(z1))


def test_equal_ideals_are_interned(hull_nn):
    # two different minimal constraint antichains with the same domain
    # b + N^2; element equality is equality of partial maps, so the hull
    # must identify them
    h = hull_nn
    s1 = h.element((0, 0), [(0, -1)])
    s2 = h.element((0, 0), [(0, 0), (1, -1)])
    assert s1 == s2
    assert h.describe_cset(s1.cset) == "b+N^2"


def test_domain_ball_members(hull_nn):
    h = hull_nn
    members, unknown = h.domain_ball([(0, -1)], 2)
    assert not unknown
    assert sorted(m for m, _ in members) == [(0, 1), (0, 2), (1, 1)]


# ---------------------------------------------------------------------------
# generated hulls vs the literal-map oracle


def test_census_n_depth2(hull_n):
    r = hull_n.generate(2)
    assert len(r.elements) == 13
    got = census(shift_moves([1], 2, set(range(13))), 2, lambda x: x <= 6)
    wide = census(shift_moves([1], 2, set(range(17))), 2, lambda x: x <= 8)
    assert len(got) == len(wide) == 13


def test_census_n_depth3(hull_n):
    r = hull_n.generate(3)
    assert len(r.elements) == 46
    assert r.stats == {"elements": 46, "moves": 6, "idempotents": 4}
    got = census(shift_moves([1], 3, set(range(25))), 3, lambda x: x <= 12)
    wide = census(shift_moves([1], 3, set(range(31))), 3, lambda x: x <= 15)
    assert len(got) == len(wide) == 46


def test_census_nn_depth2(hull_nn):
    r = hull_nn.generate(2)
    assert len(r.elements) == 54
    uni = {(x, y) for x in range(9) for y in range(9)}
    got = census(shift_moves([(1, 0), (0, 1)], 2, uni), 2,
                 lambda p: p[0] <= 4 and p[1] <= 4)
    uni = {(x, y) for x in range(12) for y in range(12)}
    wide = census(shift_moves([(1, 0), (0, 1)], 2, uni), 2,
                  lambda p: p[0] <= 5 and p[1] <= 5)
    assert len(got) == len(wide) == 54


def test_census_free_depth2(hull_free):
    r = hull_free.generate(2)
    assert len(r.elements) == 98
    got = census(free_moves("ab", 2, 8), 2, lambda w: len(w) <= 4)
    wide = census(free_moves("ab", 2, 10), 2, lambda w: len(w) <= 5)
    assert len(got) == len(wide) == 98


def test_census_numerical_depth3(hull_num):
    r = hull_num.generate(3)
    assert r.stats == {"elements": 295, "moves": 28, "idempotents": 9}
    moves = shift_moves([2, 3], 3, set(range(70)) - {1})
    assert len(moves) == 28
    got = census(moves, 3, lambda x: x <= 30)
    wide = census(shift_moves([2, 3], 3, set(range(80)) - {1}), 3,
                  lambda x: x <= 35)
    assert len(got) == len(wide) == 295
    assert len(idempotent_domains(got)) == 9


def test_census_wordlen_cut_nn(hull_nn):
    # depth 3 with moves limited to words of length <= 2
    r = hull_nn.generate(3, word_len=2)
    assert len(r.elements) == 170
    uni = {(x, y) for x in range(15) for y in range(15)}
    got = census(shift_moves([(1, 0), (0, 1)], 2, uni), 3,
                 lambda p: p[0] <= 6 and p[1] <= 6)
    assert len(got) == 170


def test_census_wordlen_cut_free(hull_free):
    r = hull_free.generate(3, word_len=2)
    assert len(r.elements) == 578
    got = census(free_moves("ab", 2, 12), 3, lambda w: len(w) <= 6)
    assert len(got) == 578


def test_bs_generation_pinned(hull_bs):
    # no literal-map oracle for BS (the group is not a subgroup of Z^k or a
    # free group), so this is a regression pin plus the law checks below
    r = hull_bs.generate(3, word_len=2)
    assert len(r.elements) == 881
    assert r.stats["idempotents"] == 7


def test_idempotent_domains_match_oracle(hull_n):
    r = hull_n.generate(2)
    forms = sorted(hull_n.describe_cset(s.cset) for s in r.idempotents())
    assert forms == ["1+N", "2+N", "N"]
    doms = idempotent_domains(census(shift_moves([1], 2, set(range(13))), 2,
                                     lambda x: x <= 6))
    assert sorted(min(d) for d in doms) == [0, 1, 2]


def test_numerical_idempotent_forms(hull_num):
    r = hull_num.generate(3)
    forms = sorted(hull_num.describe_cset(s.cset) for s in r.idempotents())
    assert forms == ["2+P", "3+P", "4+P", "5+P", "6+P", "7+P", "8+P", "9+P", "P"]


def test_nn_elements_realize_distinct_literal_maps(hull_nn):
    # strongest form of the dual route: every generated element, realized as
    # a literal map on the oracle's core region, must hit exactly the
    # oracle's census, bijectively
    h = hull_nn
    r = h.generate(2)
    core = lambda p: p[0] <= 4 and p[1] <= 4
    graphs = set()
    for s in r.elements:
        members, unknown = h.domain_ball(s.cset, 8)
        assert not unknown
        graph = frozenset(
            (x, (x[0] + s.g[0], x[1] + s.g[1]))
            for x, _ in members
            if core(x) and core((x[0] + s.g[0], x[1] + s.g[1])))
        graphs.add(graph)
    assert len(graphs) == 54
    uni = {(x, y) for x in range(9) for y in range(9)}
    oracle = census(shift_moves([(1, 0), (0, 1)], 2, uni), 2, core)
    assert graphs == set(oracle)


# ---------------------------------------------------------------------------
# inverse-semigroup and coordinate laws


@pytest.mark.parametrize("maker,depth,word_len", [
    ("n", 3, None),
    ("nn", 2, None),
    ("free", 2, None),
    ("num", 3, None),
    ("bs", 3, 1),
])
def test_laws(maker, depth, word_len, request):
    h = request.getfixturevalue(f"hull_{maker}")
    r = h.generate(depth, word_len)
    inv = inverse_semigroup_check(r)
    assert inv["ok"], inv["errors"]
    assert inv["errors"] == []
    coord = sigma_check(r)
    assert coord["ok"], coord["errors"]
    assert coord["checked"] == len(r.elements)


# ---------------------------------------------------------------------------
# ideal comparison


def test_ideal_equal_exact(hull_nn):
    c = ideal_equal(hull_nn, [(0, -1)], [(0, 0), (1, -1)])
    assert c.kind == "Equal"
    assert str(c.provenance) == "verified-exact"


def test_ideal_distinct_exact(hull_nn):
    c = ideal_equal(hull_nn, [(0, -1)], [(-1, 0)])
    assert c.kind == "Distinct"
    assert c.witness == "b+N^2 vs a+N^2"


def test_ideal_comparison_degrades_to_radius(hull_bs):
    h = hull_bs
    a = h.group.inv(h.group.embed(h.ctx.parse("a")))
    b = h.group.inv(h.group.embed(h.ctx.parse("b")))
    c = ideal_equal(h, [a], [a])
    assert c.kind == "EqualToRadius"
    assert str(c.provenance) == "verified-to-bound(8)"
    c = ideal_equal(h, [a], [b])
    assert c.kind == "Distinct"
    assert str(c.provenance) == "verified-to-bound(8)"


def test_int_ideal_behaves_like_a_tail():
    i = IntIdeal(3, frozenset())
    assert [v for v in range(8) if i.contains(v)] == [3, 4, 5, 6, 7]
    assert i.minimum() == 3


# ---------------------------------------------------------------------------
# constructibility verdicts


def test_independence_holds_with_exact_lane():
    for ctx in (preset("free_abelian", n=1, letters="a"),
                preset("free_abelian", n=2),
                preset("free")):
        v = independence_check(ctx, depth=2)
        assert v.kind == "Holds"
        assert str(v.provenance) == "verified-to-bound(2)"


def test_independence_fails_for_numerical():
    v = independence_check(preset("numerical", generators=(2, 3)), depth=3)
    assert v.kind == "Fails"
    assert str(v.provenance) == "verified-exact"
    assert v.target == "[3,inf)"
    assert set(v.parts) == {"3+P", "4+P"}


def test_right_lcm_verdicts():
    v = right_lcm_check(preset("free"), depth=2)
    assert v.kind == "Holds"
    v = right_lcm_check(preset("numerical", generators=(2, 3)), depth=3)
    assert v.kind == "Fails"
    assert str(v.provenance) == "verified-exact"
    assert v.witness == "[3,inf)"
    v = right_lcm_check(preset("bs", k=2, l=3), depth=2, radius=4)
    assert v.kind == "Holds"
    assert str(v.provenance) == "verified-to-bound(4)"


def test_toeplitz_constructible_on_lanes():
    v = toeplitz_check(preset("free_abelian", n=1, letters="a"), "a^-3")
    assert (v.kind, v.expr) == ("Constructible", "3+N")
    assert str(v.provenance) == "verified-exact"
    v = toeplitz_check(preset("free"), "ab^-1")
    assert (v.kind, v.expr) == ("Constructible", "bP")


def test_toeplitz_constructible_to_bound_without_lane():
    v = toeplitz_check(preset("bs", k=2, l=3), "ab^2a^-1")
    assert (v.kind, v.expr) == ("Constructible", "P")
    assert str(v.provenance) == "verified-to-bound(8)"


def test_toeplitz_failure_carries_exclusion_evidence():
    v = toeplitz_check(preset("bs", k=-2, l=3), "aba^-1")
    assert v.kind == "FailsToDepth"
    assert str(v.provenance) == "verified-to-bound(4)"
    assert len(v.evidence) == 16
    assert all(set(e) == {"candidate", "witness", "reason"} for e in v.evidence)
    assert {"candidate": "a", "witness": "b^3 a",
            "reason": "witness lies in X but candidate does not divide it"} in v.evidence
    assert len({e["candidate"] for e in v.evidence}) == 16
