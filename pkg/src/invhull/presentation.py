"""Finitely presented monoids: presets, normal forms, cone membership.

A :class:`MonoidContext` bundles a presentation with a monoid rewriting
system (for display normal forms and ball enumeration) and a group context
for the enveloping group (for canonical forms and membership in the positive
cone).  The bundled presets:

``free``            free monoid on n letters
``free_abelian``    N^n (commuting letters)
``artin``           Artin monoid of a Coxeter matrix (braid-style relations)
``bs``              Baumslag-Solitar monoid BS(k,l)^+, any sign pattern
``one_relator``     <letters | u = v>^+
``numerical``       numerical semigroup given by its generators, e.g. (2, 3)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import verdicts
from .groups import (
    AbelianContext,
    BaumslagSolitarContext,
    FreeGroupContext,
    GroupContext,
    RewriteGroupContext,
    exponent_vector,
)
from .rewrite import CONFLUENT, RewritingSystem, knuth_bendix
from .words import Alphabet, WordError


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class MonoidPresentation:
    alphabet: Alphabet
    relations: tuple[tuple[str, str], ...]
    name: str = ""

    def pretty_relations(self) -> list[str]:
        fmt = self.alphabet.format
        return [f"{fmt(u)} = {fmt(v)}" for u, v in self.relations]

    def trivial_units_only(self) -> bool:
        """True when no relation has an empty side.

        A congruence generated by relations whose sides are all nonempty
        never identifies a nonempty word with the empty word, so the unit
        group of the presented monoid is trivial.
        """
        return all(u and v for u, v in self.relations)


@dataclass
class MonoidContext:
    presentation: MonoidPresentation
    system: RewritingSystem
    group: GroupContext
    name: str = ""

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet

    @property
    def exact(self) -> bool:
        return self.group.exact

    def parse(self, text) -> str:
        return self.alphabet.parse(text)

    def parse_group(self, text) -> str:
        return self.alphabet.parse(text, group=True)

    def element(self, word: str):
        """Group canonical form of a positive word."""
        return self.group.embed(word)

    def group_element(self, group_word: str):
        return self.group.canon(group_word)

    def normal_form(self, word: str) -> str:
        return self.system.reduce(word)

    def in_positive(self, g, depth: int = 8) -> verdicts.Membership:
        return self.group.in_positive(g, depth=depth)

    def ball(self, radius: int) -> dict:
        """Distinct monoid elements with a positive word of length <= radius.

        Maps group canonical form -> shortest positive word (breadth-first, so
        words come shortest-first; ties resolved by generation order).  When
        the group context is not exact the dedup key is only a reduced form,
        so the count is an upper bound ('distinct to bound').
        """
        chars = self.alphabet.monoid_chars()
        out: dict = {self.element(""): ""}
        frontier = [""]
        for _ in range(radius):
            nxt = []
            for w in frontier:
                for c in chars:
                    wc = w + c
                    key = self.element(wc)
                    if key not in out:
                        out[key] = wc
                        nxt.append(wc)
            frontier = nxt
        return out

    def format_element(self, g) -> str:
        m = self.in_positive(g)
        if m.kind == "InP":
            return self.alphabet.format(self.normal_form(m.witness))
        return self.group.format(g)


def group_membership(ctx: MonoidContext, group_word, depth: int = 8) -> verdicts.Membership:
    """Decide whether a group element lies in the monoid's positive cone.

    InP carries a positive word; NotInP is only returned with an exact
    certificate (normal-form or exponent obstruction); otherwise Unknown with
    the search bound.
    """
    if isinstance(group_word, str) and any(
        c not in ctx.alphabet.group_chars() for c in group_word
    ):
        group_word = ctx.parse_group(group_word)
    g = ctx.group.canon(group_word) if isinstance(group_word, str) else group_word
    return ctx.in_positive(g, depth=depth)


# ---------------------------------------------------------------------------
# presets


def _ctx(pres: MonoidPresentation, group: GroupContext, name: str,
         max_rules: int = 200) -> MonoidContext:
    system = knuth_bendix(pres.relations, pres.alphabet, max_rules=max_rules)
    return MonoidContext(presentation=pres, system=system, group=group, name=name)


def preset_free(letters="a b") -> MonoidContext:
    alpha = Alphabet.of(letters)
    pres = MonoidPresentation(alpha, (), name=f"free monoid on {len(alpha)} letters")
    return _ctx(pres, FreeGroupContext(alpha), pres.name)


def preset_free_abelian(n: int = 2, letters=None) -> MonoidContext:
    alpha = Alphabet.of(letters) if letters else Alphabet.of("a b c d e f"[: 2 * n - 1])
    if len(alpha) != n:
        raise PresentationError("letter count does not match n")
    rels = []
    names = alpha.names
    for i in range(n):
        for j in range(i + 1, n):
            x, y = alpha.char(names[i]), alpha.char(names[j])
            rels.append((y + x, x + y))
    pres = MonoidPresentation(alpha, tuple(rels), name=f"free abelian monoid N^{n}")
    return _ctx(pres, AbelianContext(alpha), pres.name)


def _alternating(x: str, y: str, m: int) -> str:
    return "".join((x if i % 2 == 0 else y) for i in range(m))


def preset_artin(coxeter: dict, letters=None,
                 max_rules: int = 32) -> MonoidContext:
    """Artin monoid for a Coxeter matrix.

    ``coxeter`` maps unordered generator-name pairs to m >= 2 (or None/inf
    for no relation), e.g. ``{("a","b"): 3}`` for the braid monoid on three
    strands.  ``max_rules`` caps both completion runs: braid-type relations
    have no small confluent shortlex system, and a tight cap keeps the
    bounded completion from churning through critical pairs it can never
    resolve (normal forms on small balls are unaffected).
    """
    if letters is None:
        seen = []
        for pair in coxeter:
            for n in pair:
                if n not in seen:
                    seen.append(n)
        letters = seen
    alpha = Alphabet.of(letters)
    rels = []
    finite_orders = []
    for pair, m in sorted(coxeter.items()):
        if m is None:
            continue
        if m < 2:
            raise PresentationError(f"Coxeter entry must be >= 2, got {m}")
        s, t = pair
        x, y = alpha.char(s), alpha.char(t)
        rels.append((_alternating(y, x, m), _alternating(x, y, m)))
        finite_orders.append(m)
    pres = MonoidPresentation(alpha, tuple(rels), name="artin monoid")
    if all(m == 2 for m in finite_orders) and len(finite_orders) == len(alpha) * (len(alpha) - 1) // 2:
        return _ctx(pres, AbelianContext(alpha), pres.name)
    group = RewriteGroupContext(alpha, pres.relations, max_rules=max_rules)
    return _ctx(pres, group, pres.name, max_rules=max_rules)


def preset_bs(k: int, l: int) -> MonoidContext:
    """Baumslag-Solitar monoid BS(k,l)^+ for any nonzero k, l.

    The defining relation of the group is a b^k = b^l a; the monoid
    presentation rewrites it with nonnegative powers per sign pattern.
    """
    if k == 0 or l == 0:
        raise PresentationError("k and l must be nonzero")
    alpha = Alphabet.of("a b")
    a, b = alpha.char("a"), alpha.char("b")
    if k > 0 and l > 0:
        rel = (a + b * k, b * l + a)
    elif k < 0 and l > 0:
        rel = (a, b * l + a + b * (-k))
    elif k > 0 and l < 0:
        rel = (b * (-l) + a + b * k, a)
    else:
        rel = (b * (-l) + a, a + b * (-k))
    pres = MonoidPresentation(alpha, (rel,), name=f"BS({k},{l})^+")
    return _ctx(pres, BaumslagSolitarContext(alpha, k, l), pres.name)


def preset_one_relator(letters, u, v) -> MonoidContext:
    alpha = Alphabet.of(letters)
    uw, vw = alpha.parse(u), alpha.parse(v)
    if not uw or not vw:
        raise PresentationError("both sides of the relation must be nonempty")
    if uw[0] == vw[0]:
        raise PresentationError("relation sides must start with different letters")
    pres = MonoidPresentation(alpha, ((uw, vw),), name="one-relator monoid")
    return _ctx(pres, RewriteGroupContext(alpha, pres.relations), pres.name)


def preset_numerical(generators=(2, 3), letters=None) -> MonoidContext:
    """Numerical semigroup <m_1, ..., m_r> as a finitely presented monoid.

    Generators commute and satisfy x_i^{m_j} = x_j^{m_i}; the enveloping
    group is Z whenever gcd = 1.
    """
    gens = tuple(generators)
    if len(gens) != 2:
        raise PresentationError("only two-generator numerical semigroups are bundled")
    m1, m2 = gens
    if math.gcd(m1, m2) != 1 or min(m1, m2) < 2:
        raise PresentationError(
            "generators must be coprime and >= 2 (otherwise the presented "
            "monoid is not the numerical semigroup)")
    alpha = Alphabet.of(letters) if letters else Alphabet.of("x y")
    x, y = alpha.char(alpha.names[0]), alpha.char(alpha.names[1])
    rels = ((y + x, x + y), (x * m2, y * m1))
    pres = MonoidPresentation(alpha, rels, name=f"numerical semigroup <{m1},{m2}>")
    return _ctx(pres, AbelianContext(alpha, relation_vectors=((m2, -m1),)), pres.name)


PRESETS = {
    "free": preset_free,
    "free_abelian": preset_free_abelian,
    "artin": preset_artin,
    "bs": preset_bs,
    "one_relator": preset_one_relator,
    "numerical": preset_numerical,
}


def preset(name: str, **params) -> MonoidContext:
    try:
        builder = PRESETS[name]
    except KeyError:
        raise PresentationError(
            f"unknown preset {name!r}; available: {sorted(PRESETS)}"
        ) from None
    return builder(**params)


# ---------------------------------------------------------------------------
# config files


def monoid_from_presentation(pres: MonoidPresentation, strategy: str = "auto") -> MonoidContext:
    alpha = pres.alphabet
    if strategy == "auto":
        if not pres.relations:
            strategy = "free"
        elif _looks_abelian(pres):
            strategy = "abelian"
        else:
            strategy = "rewrite"
    if strategy == "free":
        group: GroupContext = FreeGroupContext(alpha)
    elif strategy == "abelian":
        vecs = tuple(
            tuple(a - b for a, b in zip(exponent_vector(u, alpha), exponent_vector(v, alpha)))
            for u, v in pres.relations
        )
        group = AbelianContext(alpha, relation_vectors=vecs)
    elif strategy == "rewrite":
        group = RewriteGroupContext(alpha, pres.relations)
    else:
        raise PresentationError(f"unknown strategy {strategy!r}")
    return _ctx(pres, group, pres.name or "monoid")


def _looks_abelian(pres: MonoidPresentation) -> bool:
    """All generator pairs commute syntactically and the remaining relation
    vectors span a lattice of rank <= 1 (what AbelianContext supports)."""
    alpha = pres.alphabet
    pairs = set()
    for u, v in pres.relations:
        if len(u) == 2 and len(v) == 2 and u == v[::-1] and u[0] != u[1]:
            pairs.add(frozenset(u))
    names = alpha.names
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            if frozenset((alpha.char(names[i]), alpha.char(names[j]))) not in pairs:
                return False
    try:
        AbelianContext(alpha, relation_vectors=tuple(
            tuple(a - b for a, b in zip(exponent_vector(u, alpha), exponent_vector(v, alpha)))
            for u, v in pres.relations
        ))
        return True
    except ValueError:
        return False


def parse_config(text: str) -> MonoidContext:
    """Parse the presentation config grammar (see README: one directive per
    line; '#' comments; either a single ``preset:`` line with key=value
    params, or ``alphabet:`` plus ``relation:`` lines and an optional
    ``strategy:``)."""
    preset_line = None
    alphabet_line = None
    relations = []
    strategy = "auto"
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PresentationError(f"cannot parse config line {raw!r}")
        key, value = (part.strip() for part in line.split(":", 1))
        if key == "preset":
            preset_line = value
        elif key == "alphabet":
            alphabet_line = value
        elif key == "relation":
            relations.append(value)
        elif key == "strategy":
            strategy = value
        else:
            raise PresentationError(f"unknown config directive {key!r}")
    if preset_line is not None:
        parts = preset_line.split()
        name, params = parts[0], {}
        for p in parts[1:]:
            if "=" not in p:
                raise PresentationError(f"preset parameter {p!r} is not key=value")
            k, v = p.split("=", 1)
            params[k] = _parse_param(v)
        return preset(name, **params)
    if alphabet_line is None:
        raise PresentationError("config needs either a preset or an alphabet")
    alpha = Alphabet.of(alphabet_line)
    rels = []
    for r in relations:
        if "=" not in r:
            raise PresentationError(f"relation {r!r} is not of the form u = v")
        u, v = (side.strip() for side in r.split("=", 1))
        try:
            rels.append((alpha.parse(u), alpha.parse(v)))
        except WordError as exc:
            raise PresentationError(str(exc)) from None
    pres = MonoidPresentation(alpha, tuple(rels), name="monoid from config")
    return monoid_from_presentation(pres, strategy=strategy)


def _parse_param(v: str):
    try:
        return int(v)
    except ValueError:
        pass
    if "," in v:
        return tuple(_parse_param(p) for p in v.split(","))
    return v
