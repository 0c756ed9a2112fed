"""Tests for the enveloping-group layer against independent oracles.

The Baumslag-Solitar contexts are compared with a 2x2 rational matrix
representation (consistency: equal canonical forms must give equal
matrices), free reduction with a plain stack reducer, and the positive-cone
answers with hand-computable cases.
"""

import random

import pytest

from oracles import MAT_ID, bs_word_matrix, stack_reduce

from invhull import preset
from invhull.groups import (
    AbelianContext,
    BaumslagSolitarContext,
    FreeGroupContext,
    exponent_vector,
)
from invhull.presentation import group_membership
from invhull.words import Alphabet


AB = Alphabet.of("a b")
SIGNS = [(2, 3), (-2, 3), (2, -3), (-2, -3)]


def random_group_word(rng, length):
    return "".join(
        AB.char(rng.choice("ab"), rng.random() < 0.5) for _ in range(length)
    )


def as_pairs(word):
    """Internal word -> (letter, sign) pairs for the matrix oracle."""
    out = []
    for ch in word:
        name, inv = AB.letter_of_char(ch)
        out.append((name, -1 if inv else 1))
    return out


# ---------------------------------------------------------------------------
# free groups


def test_free_group_ops():
    g = FreeGroupContext(AB)
    x = g.canon(AB.parse("a b b^-1", group=True))
    assert g.format(x) == "a"
    assert g.mul(x, g.inv(x)) == g.identity()
    assert g.is_identity(g.canon(AB.parse("a a^-1", group=True)))
    assert g.exact


def test_free_group_canon_matches_stack_reducer():
    g = FreeGroupContext(AB)
    rng = random.Random(11)
    for _ in range(300):
        w = random_group_word(rng, rng.randrange(0, 12))
        want = stack_reduce(as_pairs(w))
        assert as_pairs(g.canon(w)) == list(want)


def test_free_group_positive_cone():
    g = FreeGroupContext(AB)
    m = g.in_positive(g.canon(AB.parse("ab")))
    assert m.is_in is True
    assert str(m.provenance) == "verified-exact"
    m = g.in_positive(g.canon(AB.parse("a b^-1", group=True)))
    assert m.is_in is False
    assert "inverse letter" in m.note


# ---------------------------------------------------------------------------
# abelian quotients


def test_exponent_vector():
    assert exponent_vector(AB.parse("ab^2"), AB) == (1, 2)
    assert exponent_vector("", AB) == (0, 0)


def test_free_abelian_context():
    g = AbelianContext(AB)
    assert g.lattice is None
    x = g.canon(AB.parse("b a b^-1", group=True))
    assert x == (1, 0)
    assert g.mul(x, x) == (2, 0)
    assert g.inv(x) == (-1, 0)
    m = g.in_positive((2, 1))
    assert m.is_in is True
    m = g.in_positive((-1, 2))
    assert m.is_in is False
    assert "negative" in m.note


def test_single_relation_lattice():
    # x = 2, y = 3 in the enveloping group Z: the relation x^3 = y^2
    # gives the vector (3, -2)
    xy = Alphabet.of("x y")
    g = AbelianContext(xy, relation_vectors=((3, -2),))
    assert g.lattice == (3, -2)
    assert g.canon(xy.parse("x^3", group=True)) == g.canon(xy.parse("y^2", group=True))
    val = lambda s: g.canon(xy.parse(s, group=True))
    # value 1 = 3 - 2 has no nonnegative representative; 4 = 2 + 2 does
    m = g.in_positive(val("y x^-1"))
    assert m.is_in is False
    assert "no nonnegative representative" in m.note
    m = g.in_positive(val("y^2 x^-1"))
    assert m.is_in is True
    assert exponent_vector(m.witness, xy) in {(2, 0)}  # witness spells 2+2


def test_two_independent_relations_rejected():
    xyz = Alphabet.of("x y z")
    with pytest.raises(ValueError):
        AbelianContext(xyz, relation_vectors=((1, -1, 0), (0, 1, -1)))


# ---------------------------------------------------------------------------
# Baumslag-Solitar contexts, all four sign patterns


def relation_pairs(k, l):
    """The defining relation a b^k a^-1 b^-l as oracle letter pairs."""
    sk = 1 if k > 0 else -1
    sl = 1 if l > 0 else -1
    return ([("a", 1)] + [("b", sk)] * abs(k) + [("a", -1)]
            + [("b", -sl)] * abs(l))


@pytest.mark.parametrize("k,l", SIGNS)
def test_bs_matrix_relation_holds(k, l):
    assert bs_word_matrix(relation_pairs(k, l), k, l) == MAT_ID


@pytest.mark.parametrize("k,l", SIGNS)
def test_bs_canon_consistent_with_matrices(k, l):
    bs = BaumslagSolitarContext(AB, k, l)
    rng = random.Random(100 * k + l)
    words = [random_group_word(rng, rng.randrange(0, 8)) for _ in range(120)]
    seen = {}
    for w in words:
        c = bs.canon(w)
        m = bs_word_matrix(as_pairs(w), k, l)
        if c in seen:
            assert seen[c] == m, "equal canonical forms, different matrices"
        seen[c] = m
    # the defining relation itself collapses
    lhs = bs.canon(AB.parse(f"a b^{k} a^-1", group=True))
    rhs = bs.canon(AB.parse(f"b^{l}", group=True))
    assert lhs == rhs


@pytest.mark.parametrize("k,l", SIGNS)
def test_bs_group_ops(k, l):
    bs = BaumslagSolitarContext(AB, k, l)
    rng = random.Random(k * 17 + l)
    for _ in range(60):
        w = random_group_word(rng, rng.randrange(0, 7))
        x = bs.canon(w)
        assert bs.mul(x, bs.inv(x)) == bs.identity()
        assert bs.canon(w + AB.char("a") + AB.char("a", True)) == x


@pytest.mark.parametrize("k,l", SIGNS)
def test_bs_positive_words_are_in_cone(k, l):
    bs = BaumslagSolitarContext(AB, k, l)
    rng = random.Random(5 * k + l)
    for _ in range(80):
        w = "".join(rng.choice([AB.char("a"), AB.char("b")])
                    for _ in range(rng.randrange(0, 7)))
        m = bs.in_positive(bs.embed(w))
        assert m.is_in is True, AB.format(w)
    assert bs.in_positive(bs.canon(AB.parse("b^-1", group=True))).is_in is False


def test_bs_cone_rejects_unpinched_conjugate():
    bs = BaumslagSolitarContext(AB, 2, 3)
    m = bs.in_positive(bs.canon(AB.parse("a b a^-1", group=True)))
    assert m.is_in is False
    assert "a^-1" in m.note


def test_bs_rejects_degenerate_parameters():
    with pytest.raises(ValueError):
        BaumslagSolitarContext(AB, 0, 3)
    with pytest.raises(ValueError):
        BaumslagSolitarContext(Alphabet.of("a"), 2, 3)


def test_bs_sign_collapse():
    # (k,l) and (-k,-l) present the same group, so canonical forms agree
    pos = BaumslagSolitarContext(AB, 2, 3)
    neg = BaumslagSolitarContext(AB, -2, -3)
    assert (pos.kappa, pos.lam, pos.sign) == (neg.kappa, neg.lam, neg.sign)


# ---------------------------------------------------------------------------
# generic rewriting contexts through presets


def test_one_relator_group_is_exact_here():
    ctx = preset("one_relator", letters="a b c", u="ab", v="ca")
    assert ctx.group.exact


def test_artin_group_is_bounded_not_exact():
    ctx = preset("artin", coxeter={("a", "b"): 3})
    assert not ctx.group.exact


def test_membership_positive_word_is_exact():
    ctx = preset("artin", coxeter={("a", "b"): 3})
    m = group_membership(ctx, "b a", depth=4)
    assert m.is_in is True
    assert str(m.provenance) == "verified-exact"


def test_membership_exponent_obstruction():
    ctx = preset("artin", coxeter={("a", "b"): 3})
    m = group_membership(ctx, "a^-1", depth=4)
    assert m.is_in is False
    assert "exponent-sum obstruction" in m.note


def test_membership_unknown_is_honest_without_confluence():
    # the commutator has balanced exponents, so the obstruction passes,
    # and the bounded system cannot certify a negative answer
    ctx = preset("artin", coxeter={("a", "b"): 3})
    m = group_membership(ctx, "a b a^-1 b^-1", depth=4)
    assert m.is_in is None
    assert str(m.provenance) == "verified-to-bound(4)"
    assert "not verified confluent" in m.note


def test_membership_unknown_is_honest_with_confluence():
    # confluent system, but the bounded positive-word search is still the
    # only upper route, so the answer stays Unknown rather than guessing
    ctx = preset("one_relator", letters="a b c", u="ab", v="ca")
    m = group_membership(ctx, "a b a^-1 b^-1", depth=3)
    assert m.is_in is None
    assert "no positive word up to the bound" in m.note
