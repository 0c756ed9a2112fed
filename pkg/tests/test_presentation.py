"""Tests for presets, the config grammar, and monoid-context plumbing."""

import pytest

from invhull.groups import AbelianContext, FreeGroupContext, RewriteGroupContext
from invhull.presentation import (
    MonoidPresentation,
    PresentationError,
    monoid_from_presentation,
    parse_config,
    preset,
)
from invhull.words import Alphabet


# ---------------------------------------------------------------------------
# presets


def test_preset_free():
    ctx = preset("free", letters="a b")
    assert ctx.name == "free monoid on 2 letters"
    assert ctx.presentation.relations == ()
    assert isinstance(ctx.group, FreeGroupContext)
    assert ctx.exact


def test_preset_free_abelian():
    ctx = preset("free_abelian", n=2)
    assert ctx.presentation.pretty_relations() == ["b a = a b"]
    assert ctx.alphabet.format(ctx.normal_form(ctx.parse("ba"))) == "a b"
    assert isinstance(ctx.group, AbelianContext)


def test_preset_free_abelian_letter_count_must_match():
    assert preset("free_abelian", n=1, letters="a").alphabet.names == ("a",)
    with pytest.raises(PresentationError):
        preset("free_abelian", n=2, letters="a")


def test_preset_artin():
    ctx = preset("artin", coxeter={("a", "b"): 3})
    assert ctx.name == "artin monoid"
    assert ctx.presentation.pretty_relations() == ["b a b = a b a"]
    assert not ctx.exact  # braid relations have no small confluent system


def test_preset_bs_all_sign_patterns():
    want = {
        (2, 3): ["a b^2 = b^3 a"],
        (-2, 3): ["a = b^3 a b^2"],
        (2, -3): ["b^3 a b^2 = a"],
        (-2, -3): ["b^3 a = a b^2"],
    }
    for (k, l), rels in want.items():
        ctx = preset("bs", k=k, l=l)
        assert ctx.name == f"BS({k},{l})^+"
        assert ctx.presentation.pretty_relations() == rels
    with pytest.raises(PresentationError):
        preset("bs", k=0, l=3)


def test_preset_one_relator():
    ctx = preset("one_relator", letters="a b c", u="ab", v="ca")
    assert ctx.presentation.pretty_relations() == ["a b = c a"]
    with pytest.raises(PresentationError):
        preset("one_relator", letters="a b", u="", v="a")
    with pytest.raises(PresentationError):
        preset("one_relator", letters="a b", u="ab", v="ab")


def test_preset_numerical():
    ctx = preset("numerical", generators=(2, 3))
    assert ctx.name == "numerical semigroup <2,3>"
    assert ctx.presentation.pretty_relations() == ["y x = x y", "x^3 = y^2"]
    for bad in [(2, 4), (1, 3), (2, 3, 5)]:
        with pytest.raises(PresentationError):
            preset("numerical", generators=bad)


def test_unknown_preset_lists_choices():
    with pytest.raises(PresentationError, match="free_abelian"):
        preset("nope")


# ---------------------------------------------------------------------------
# strategy selection


def test_auto_strategy_free():
    pres = MonoidPresentation(Alphabet.of("a b"), ())
    assert isinstance(monoid_from_presentation(pres).group, FreeGroupContext)


def test_auto_strategy_abelian():
    al = Alphabet.of("a b")
    pres = MonoidPresentation(al, ((al.parse("ba"), al.parse("ab")),))
    assert isinstance(monoid_from_presentation(pres).group, AbelianContext)


def test_auto_strategy_rewrite():
    al = Alphabet.of("a b")
    pres = MonoidPresentation(al, ((al.parse("bab"), al.parse("aba")),))
    assert isinstance(monoid_from_presentation(pres).group, RewriteGroupContext)


def test_unknown_strategy_rejected():
    pres = MonoidPresentation(Alphabet.of("a b"), ())
    with pytest.raises(PresentationError):
        monoid_from_presentation(pres, strategy="magic")


def test_trivial_units_flag():
    al = Alphabet.of("a")
    assert MonoidPresentation(al, ()).trivial_units_only()
    assert not MonoidPresentation(al, ((al.parse("a"), ""),)).trivial_units_only()


# ---------------------------------------------------------------------------
# balls and display


def test_ball_counts():
    assert len(preset("free", letters="a b").ball(2)) == 7
    assert len(preset("free_abelian", n=2).ball(2)) == 6
    # values 0, 2..9 of the numerical semigroup <2, 3>
    assert len(preset("numerical", generators=(2, 3)).ball(3)) == 9


def test_ball_words_are_shortest():
    ctx = preset("free_abelian", n=2)
    for g, w in ctx.ball(3).items():
        assert ctx.element(w) == g
        assert len(w) <= 3


def test_format_element_prefers_positive_normal_form():
    ctx = preset("free_abelian", n=2)
    g = ctx.element(ctx.parse("ba"))
    assert ctx.format_element(g) == "a b"
    free = preset("free")
    g = free.group.canon(free.parse_group("a b^-1"))
    assert free.format_element(g) == "a b^-1"


# ---------------------------------------------------------------------------
# config grammar


def test_config_preset_line():
    ctx = parse_config("preset: bs k=2 l=3\n")
    assert ctx.name == "BS(2,3)^+"


def test_config_preset_tuple_param():
    ctx = parse_config("# numerical semigroup\npreset: numerical generators=2,3\n")
    assert ctx.name == "numerical semigroup <2,3>"


def test_config_alphabet_and_relations():
    ctx = parse_config("alphabet: a b\nrelation: ba = ab\n")
    assert isinstance(ctx.group, AbelianContext)
    assert ctx.name == "monoid from config"


def test_config_strategy_override():
    ctx = parse_config("alphabet: a b\nrelation: ba = ab\nstrategy: rewrite\n")
    assert isinstance(ctx.group, RewriteGroupContext)


def test_config_comments_and_blank_lines():
    ctx = parse_config("\n# free monoid\nalphabet: a b\n\n")
    assert isinstance(ctx.group, FreeGroupContext)


@pytest.mark.parametrize("text", [
    "just words\n",
    "colour: blue\n",
    "preset: bs k=2 l\n",
    "alphabet: a b\nrelation: ab ba\n",
    "relation: ba = ab\n",
    "alphabet: a b\nrelation: xy = yx\n",
    "alphabet: a b\nstrategy: magic\n",
])
def test_config_errors(text):
    with pytest.raises(PresentationError):
        parse_config(text)
