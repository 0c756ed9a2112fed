"""The inverse hull of a monoid's translation action on itself.

Elements are partial bijections of the monoid P obtained by composing
left-multiplication maps (x -> p x) and their inverses.  An element is stored
as a pair ``(g, C)``: ``g`` is the composite's value in the enveloping group
and ``C`` a finite set of group elements recording the accumulated domain
constraints; the element acts on ``E(C) = {x in P : c x in P for all c in C}``
by ``x -> g x``.  With the normalization used here (1 and g are always
constraints; constraints already lying in P are dropped) the inverse-semigroup
laws hold on the nose for the stored pairs, so law checking is exact even when
membership in P is only semi-decidable.

The module also decides three ideal-theoretic properties of the family of
constructible right ideals E(C) -- independence, existence of right LCMs, and
constructibility of P intersect g^{-1}P -- exactly where the context admits a
closed ideal form (free abelian, numerical, free) and to an explicit bound
elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import verdicts
from .groups import AbelianContext, FreeGroupContext
from .presentation import MonoidContext


@dataclass(frozen=True)
class HullElement:
    """Partial bijection x -> g x with domain E(cset)."""

    g: object
    cset: frozenset


@dataclass
class GenerationResult:
    hull: "Hull"
    elements: list
    via: dict
    depth: int
    word_len: int
    stats: dict

    def idempotents(self) -> list:
        return [s for s in self.elements if self.hull.is_idempotent(s)]

    def constraint_sets(self) -> list:
        seen, out = set(), []
        for s in self.elements:
            if s.cset not in seen:
                seen.add(s.cset)
                out.append(s.cset)
        return out


class Hull:
    """Operations on hull elements over a fixed monoid context."""

    def __init__(self, ctx: MonoidContext, membership_depth: int = 8):
        self.ctx = ctx
        self.group = ctx.group
        self.membership_depth = membership_depth
        self._memb: dict = {}
        self._id = self.group.identity()
        self.lane = make_lane(ctx)
        self._form_rep: dict = {}
        self._zero = None

    # -- membership with cache ------------------------------------------------

    def in_p(self, g) -> verdicts.Membership:
        if g not in self._memb:
            self._memb[g] = self.group.in_positive(g, depth=self.membership_depth)
        return self._memb[g]

    # -- element construction -------------------------------------------------

    def _implies(self, cp, c) -> bool:
        """Constraint cp forces constraint c: c = (c cp^-1) cp with the first
        factor certified in P, so cp*x in P gives c*x in P."""
        g = self.group
        return self.in_p(g.mul(c, g.inv(cp))).kind == "InP"

    def _canon_cset(self, cs) -> frozenset:
        """Minimal elements of the implication preorder.

        The preorder is transitive (products of certified positives are
        positive) and, for monoids without nontrivial units, antisymmetric,
        so the minimal set is well defined and commutes with right
        translation -- which is what makes the inverse-semigroup laws hold
        on the stored pairs.
        """
        items = sorted(cs)
        keep = [c for c in items
                if not any(cp != c and self._implies(cp, c) for cp in items)]
        if not keep:  # only possible with nontrivial units; stay sound
            keep = items[:1]
        return frozenset(keep)

    def element(self, g, cs=()) -> HullElement:
        full = set(cs)
        full.add(self._id)
        full.add(g)
        cset = self._canon_cset(full)
        if self.lane is not None:
            # Equality of hull elements is equality of partial bijections,
            # and a minimal constraint antichain is not unique per ideal in
            # rank >= 2 (nor for incompatible prefixes).  With an exact lane,
            # intern the cset by its ideal form so equal domains share one
            # representative, and collapse every empty domain to the single
            # nowhere-defined zero (whose coordinate is the identity; sigma
            # is undefined at the zero and skipped by the checks).
            form = self.lane.form_of_cset(cset)
            if form.is_empty():
                if self._zero is None:
                    self._zero = HullElement(self._id, cset)
                return self._zero
            cset = self._form_rep.setdefault(form, cset)
        return HullElement(g, cset)

    def is_zero(self, s: HullElement) -> bool:
        return self._zero is not None and s == self._zero

    def identity_element(self) -> HullElement:
        return self.element(self._id)

    def multiply_move(self, word: str) -> HullElement:
        """x -> w x, defined on all of P."""
        return self.element(self.group.embed(word))

    def divide_move(self, word: str) -> HullElement:
        """x -> w^{-1} x, defined on w P."""
        return self.element(self.group.inv(self.group.embed(word)))

    def compose(self, s: HullElement, t: HullElement) -> HullElement:
        """s after t."""
        mul = self.group.mul
        cs = set(t.cset)
        for c in s.cset:
            cs.add(mul(c, t.g))
        return self.element(mul(s.g, t.g), cs)

    def inverse(self, s: HullElement) -> HullElement:
        gi = self.group.inv(s.g)
        mul = self.group.mul
        return self.element(gi, {mul(c, gi) for c in s.cset})

    def is_idempotent(self, s: HullElement) -> bool:
        return s.g == self._id

    def source_idempotent(self, s: HullElement) -> HullElement:
        return self.compose(self.inverse(s), s)

    def range_idempotent(self, s: HullElement) -> HullElement:
        return self.compose(s, self.inverse(s))

    def sigma(self, s: HullElement):
        """The group coordinate of s (the unique group element s acts by)."""
        return s.g

    def format_element(self, s: HullElement) -> str:
        dom = self.describe_cset(s.cset)
        return f"(x -> {self.group.format(s.g)} * x on {dom})"

    def describe_cset(self, cs) -> str:
        if self.lane is not None:
            form = self.lane.form_of_cset(cs)
            if form is not None:
                return form.describe(self.ctx)
        names = sorted(self.group.format(c) for c in cs)
        return "E{" + ", ".join(names) + "}"

    # -- domains on balls -----------------------------------------------------

    def domain_ball(self, cs, radius: int):
        """(members, unknown_seen): elements x of the radius-ball with every
        c*x certified in P; unknown_seen reports undecided memberships."""
        mul = self.group.mul
        members, unknown = [], False
        for x, word in self.ctx.ball(radius).items():
            ok = True
            for c in cs:
                m = self.in_p(mul(c, x))
                if m.kind == "Unknown":
                    unknown = True
                if m.kind != "InP":
                    ok = False
                    break
            if ok:
                members.append((x, word))
        return members, unknown

    # -- generation -----------------------------------------------------------

    def generate(self, depth: int, word_len: int | None = None) -> GenerationResult:
        """All composites of at most ``depth`` multiply/divide moves, each by a
        nonempty positive word of length at most ``word_len`` (default: depth).
        Deduplication is by the normalized (g, C) pair."""
        if word_len is None:
            word_len = depth
        moves = []
        chars = self.ctx.alphabet.monoid_chars()
        level = [""]
        for _ in range(word_len):
            level = [w + c for w in level for c in chars]
            for w in level:
                moves.append((("*", w), self.multiply_move(w)))
                moves.append((("/", w), self.divide_move(w)))
        ident = self.identity_element()
        via = {ident: ()}
        order = [ident]
        frontier = [ident]
        for _ in range(depth):
            fresh = []
            for s in frontier:
                for tag, mv in moves:
                    u = self.compose(mv, s)
                    if u not in via:
                        via[u] = via[s] + (tag,)
                        order.append(u)
                        fresh.append(u)
            frontier = fresh
        stats = {
            "elements": len(order),
            "moves": len(moves),
            "idempotents": sum(1 for s in order if self.is_idempotent(s)),
        }
        return GenerationResult(self, order, via, depth, word_len, stats)


# ---------------------------------------------------------------------------
# structural checks on a generated hull


def inverse_semigroup_check(result: GenerationResult, pair_cap: int = 200) -> dict:
    """Verify the inverse-semigroup laws exactly on the stored pairs.

    Checks, for every generated s: s = s s^-1 s, s^-1 = s^-1 s s^-1,
    (s^-1)^-1 = s; for every pair of idempotents: ef = fe; and
    (st)^-1 = t^-1 s^-1 on the first pair_cap x pair_cap block.
    """
    hull = result.hull
    errors = []
    for s in result.elements:
        si = hull.inverse(s)
        if hull.compose(hull.compose(s, si), s) != s:
            errors.append(("s s^-1 s != s", s))
        if hull.compose(hull.compose(si, s), si) != si:
            errors.append(("s^-1 s s^-1 != s^-1", s))
        if hull.inverse(si) != s:
            errors.append(("double inverse", s))
    idems = result.idempotents()
    for i, e in enumerate(idems):
        for f in idems[i + 1:]:
            if hull.compose(e, f) != hull.compose(f, e):
                errors.append(("idempotents do not commute", (e, f)))
    sample = result.elements[:pair_cap]
    for s in sample:
        for t in sample:
            lhs = hull.inverse(hull.compose(s, t))
            rhs = hull.compose(hull.inverse(t), hull.inverse(s))
            if lhs != rhs:
                errors.append(("(st)^-1 != t^-1 s^-1", (s, t)))
    return {
        "ok": not errors,
        "errors": errors,
        "elements": len(result.elements),
        "idempotents": len(idems),
        "antihom_pairs": len(sample) ** 2,
    }


def sigma_check(result: GenerationResult) -> dict:
    """The group coordinate is a partial homomorphism to the enveloping group,
    it is idempotent pure (coordinate 1 forces an idempotent), and it is the
    unique homomorphism taking the generating moves to their defining group
    elements (recomputed from each element's recorded move sequence)."""
    hull = result.hull
    g = hull.group
    errors = []
    for s in result.elements:
        if s.g == g.identity() and hull.compose(s, s) != s:
            errors.append(("coordinate 1 but not idempotent", s))
        if hull.sigma(hull.inverse(s)) != g.inv(s.g):
            errors.append(("sigma(s^-1) != sigma(s)^-1", s))
    sample = result.elements[:120]
    for s in sample:
        for t in sample:
            st = hull.compose(s, t)
            if hull.is_zero(st):
                # the coordinate is undefined at the nowhere-defined map
                continue
            if hull.sigma(st) != g.mul(s.g, t.g):
                errors.append(("sigma not multiplicative", (s, t)))
    for s, tags in result.via.items():
        if hull.is_zero(s):
            continue
        acc = g.identity()
        for kind, w in tags:
            gw = g.embed(w)
            if kind == "/":
                gw = g.inv(gw)
            acc = g.mul(gw, acc)
        if acc != s.g:
            errors.append(("recomputed coordinate differs", s))
    return {"ok": not errors, "errors": errors, "checked": len(result.elements)}


# ---------------------------------------------------------------------------
# exact ideal forms


@dataclass(frozen=True)
class EmptyIdeal:
    kind = "empty"

    def is_empty(self):
        return True

    def describe(self, ctx):
        return "empty"


@dataclass(frozen=True)
class VectorIdeal:
    """m + N^k inside N^k."""

    shift: tuple

    kind = "vector"

    def is_empty(self):
        return False

    def contains(self, vec) -> bool:
        return all(x >= m for x, m in zip(vec, self.shift))

    def subset_of(self, other) -> bool:
        return all(m >= m2 for m, m2 in zip(self.shift, other.shift))

    def describe(self, ctx):
        alpha = ctx.alphabet
        base = "N" if len(self.shift) == 1 else f"N^{len(self.shift)}"
        if not any(self.shift):
            return base
        if len(self.shift) == 1:
            return f"{self.shift[0]}+{base}"
        word = "".join(alpha.char(n) * k for n, k in zip(alpha.names, self.shift))
        return f"{alpha.format(word)}+{base}"


@dataclass(frozen=True)
class WordIdeal:
    """w P inside a free monoid (w = "" gives P itself)."""

    prefix: str

    kind = "word"

    def is_empty(self):
        return False

    def contains(self, word: str) -> bool:
        return word.startswith(self.prefix)

    def subset_of(self, other) -> bool:
        return self.prefix.startswith(other.prefix)

    def describe(self, ctx):
        if not self.prefix:
            return "P"
        return f"{ctx.alphabet.format(self.prefix)}P"


@dataclass(frozen=True)
class IntIdeal:
    """A subset of Z of the form below ∪ [threshold, inf)."""

    threshold: int
    below: frozenset

    kind = "int"

    @staticmethod
    def make(threshold: int, members) -> "IntIdeal":
        members = {m for m in members if m < threshold}
        while threshold - 1 in members:
            threshold -= 1
            members.discard(threshold)
        return IntIdeal(threshold, frozenset(members))

    def is_empty(self):
        return False  # a tail [threshold, inf) is always present

    def contains(self, v: int) -> bool:
        return v >= self.threshold or v in self.below

    def minimum(self) -> int:
        return min(self.below) if self.below else self.threshold

    def translate(self, c: int) -> "IntIdeal":
        return IntIdeal.make(self.threshold + c, {m + c for m in self.below})

    def meet(self, other: "IntIdeal") -> "IntIdeal":
        t = max(self.threshold, other.threshold)
        members = {m for m in range(min(self.minimum(), other.minimum()), t)
                   if self.contains(m) and other.contains(m)}
        return IntIdeal.make(t, members)

    def union(self, other: "IntIdeal") -> "IntIdeal":
        t = min(self.threshold, other.threshold)
        lo = min(self.minimum(), other.minimum())
        members = {m for m in range(lo, max(self.threshold, other.threshold))
                   if self.contains(m) or other.contains(m)}
        return IntIdeal.make(max(self.threshold, other.threshold), members)

    def subset_of(self, other: "IntIdeal") -> bool:
        if self.threshold < other.threshold:
            if any(not other.contains(v) for v in range(self.threshold, other.threshold)):
                return False
        return all(other.contains(m) for m in self.below)

    def elements_upto(self, limit: int) -> list:
        return [v for v in range(self.minimum(), limit) if self.contains(v)]

    def describe(self, ctx):
        lane = make_lane(ctx)
        if isinstance(lane, NumericalLane):
            if self == lane.p_form:
                return "P"
            v = lane.principal_generator(self)
            if v is not None:
                return f"{v}+P"
        head = sorted(self.below)
        if not head:
            return f"[{self.threshold},inf)"
        shown = ", ".join(str(v) for v in head)
        return f"{{{shown}}} u [{self.threshold},inf)"


class VectorLane:
    """Exact ideals for N^k: every E(C) is principal."""

    def __init__(self, group: AbelianContext):
        self.group = group

    def form_of_cset(self, cs):
        k = len(self.group.alphabet)
        m = [0] * k
        for c in cs:
            for i, ci in enumerate(c):
                m[i] = max(m[i], -ci)
        return VectorIdeal(tuple(m))

    def principal_generator(self, form):
        return form.shift

    def union_covers(self, target, parts) -> bool:
        # the generator of a principal ideal lies in a part only if that part
        # is the whole ideal, and parts are proper
        return any(p.contains(target.shift) for p in parts)

    def generator_word(self, form, ctx):
        alpha = ctx.alphabet
        return "".join(alpha.char(n) * k for n, k in zip(alpha.names, form.shift))


class FreeLane:
    """Exact ideals for a free monoid: every E(C) is wP or empty."""

    def __init__(self, group: FreeGroupContext):
        self.group = group

    def _constraint(self, c: str):
        """{x in P : c x in P} for one reduced group word c."""
        alpha = self.group.alphabet
        pos = set(alpha.monoid_chars())
        i = len(c)
        while i > 0 and c[i - 1] not in pos:
            i -= 1
        head, tail = c[:i], c[i:]
        if any(ch not in pos for ch in head):
            return EmptyIdeal()
        return WordIdeal(alpha.invert_word(tail))

    def form_of_cset(self, cs):
        prefix = ""
        for c in cs:
            f = self._constraint(c)
            if isinstance(f, EmptyIdeal):
                return f
            w = f.prefix
            if w.startswith(prefix):
                prefix = w
            elif not prefix.startswith(w):
                return EmptyIdeal()
        return WordIdeal(prefix)

    def principal_generator(self, form):
        return form.prefix

    def union_covers(self, target, parts) -> bool:
        return any(p.contains(target.prefix) for p in parts)

    def generator_word(self, form, ctx):
        return form.prefix


class NumericalLane:
    """Exact ideals for a 2-generator numerical semigroup, as value sets."""

    def __init__(self, group: AbelianContext, gens: tuple):
        self.group = group
        self.gens = gens
        m1, m2 = gens
        frob = m1 * m2 - m1 - m2
        self.p_form = IntIdeal.make(
            frob + 1, {v for v in range(frob + 1) if self._representable(v)}
        )

    def _representable(self, v: int) -> bool:
        m1, m2 = self.gens
        return any((v - m1 * a) % m2 == 0 and v - m1 * a >= 0
                   for a in range(v // m1 + 1))

    def value(self, canon) -> int:
        return sum(g * x for g, x in zip(self.gens, canon))

    def form_of_cset(self, cs):
        out = self.p_form
        for c in cs:
            cv = self.value(c)
            if cv != 0:
                out = out.meet(self.p_form.translate(-cv))
        return out

    def principal_generator(self, form):
        p = form.minimum()
        if self.p_form.translate(p) == form:
            return p
        return None

    def union_covers(self, target, parts) -> bool:
        acc = None
        for p in parts:
            acc = p if acc is None else acc.union(p)
        return acc == target

    def generator_word(self, form, ctx):
        v = self.principal_generator(form)
        if v is None:
            return None
        return self.word_for_value(v, ctx)

    def word_for_value(self, v: int, ctx) -> str | None:
        m1, m2 = self.gens
        alpha = ctx.alphabet
        for a in range(v // m1 + 1):
            rest = v - m1 * a
            if rest % m2 == 0:
                return alpha.char(alpha.names[0]) * a + alpha.char(alpha.names[1]) * (rest // m2)
        return None


def make_lane(ctx: MonoidContext):
    g = ctx.group
    if isinstance(g, FreeGroupContext):
        return FreeLane(g)
    if isinstance(g, AbelianContext):
        lat = g.lattice
        if lat is None:
            return VectorLane(g)
        if len(lat) == 2:
            phi = (-lat[1], lat[0])
            if phi[0] > 0 and phi[1] > 0 and math.gcd(phi[0], phi[1]) == 1:
                return NumericalLane(g, phi)
    return None


# ---------------------------------------------------------------------------
# ideal comparison


@dataclass(frozen=True)
class IdealComparison:
    kind: str  # Equal | Distinct | EqualToRadius
    provenance: verdicts.Provenance
    witness: str | None = None
    note: str = ""


def ideal_equal(hull: Hull, cs1, cs2, radius: int = 8) -> IdealComparison:
    """Compare E(cs1) and E(cs2): exactly when the context has an ideal lane,
    else on the radius-ball with an honest bound."""
    lane = hull.lane
    if lane is not None:
        f1, f2 = lane.form_of_cset(cs1), lane.form_of_cset(cs2)
        if f1 is not None and f2 is not None:
            if f1 == f2:
                return IdealComparison("Equal", verdicts.EXACT)
            return IdealComparison(
                "Distinct", verdicts.EXACT,
                witness=f"{f1.describe(hull.ctx)} vs {f2.describe(hull.ctx)}")
    m1, u1 = hull.domain_ball(cs1, radius)
    m2, u2 = hull.domain_ball(cs2, radius)
    s1 = {x for x, _ in m1}
    s2 = {x for x, _ in m2}
    if s1 != s2:
        diff = s1.symmetric_difference(s2)
        words = dict(m1 + m2)
        w = min((words[x] for x in diff), key=lambda v: (len(v), v))
        return IdealComparison(
            "Distinct", verdicts.to_bound(radius),
            witness=hull.ctx.alphabet.format(w),
            note="witness lies in exactly one of the two domains",
        )
    note = "memberships undecided inside the ball" if (u1 or u2) else ""
    return IdealComparison("EqualToRadius", verdicts.to_bound(radius), note=note)


# ---------------------------------------------------------------------------
# independence


@dataclass(frozen=True)
class IndependenceVerdict:
    kind: str  # Holds | Fails | Unknown
    provenance: verdicts.Provenance
    target: str | None = None
    parts: tuple = ()
    note: str = ""


def independence_check(ctx: MonoidContext, depth: int = 3,
                       word_len: int | None = None,
                       radius: int = 8) -> IndependenceVerdict:
    """Is every constructible ideal NOT a union of finitely many proper
    constructible subideals?  Fails needs a verified counterexample; Holds is
    relative to the ideals reachable at this depth."""
    hull = Hull(ctx)
    gen = hull.generate(depth, word_len)
    csets = gen.constraint_sets()
    lane = hull.lane
    if lane is not None:
        forms = []
        for cs in csets:
            f = lane.form_of_cset(cs)
            if f is None:
                lane = None
                break
            if not f.is_empty() and f not in forms:
                forms.append(f)
    if lane is not None:
        for target in forms:
            subs = [f for f in forms if f != target and f.subset_of(target)]
            if not subs:
                continue
            if lane.union_covers(target, subs):
                parts = _minimal_cover(lane, target, subs)
                return IndependenceVerdict(
                    "Fails", verdicts.EXACT,
                    target=target.describe(ctx),
                    parts=tuple(p.describe(ctx) for p in parts),
                    note=(f"ideal equals the union of {len(parts)} proper "
                          f"subideals; found at zigzag depth {depth}"),
                )
        return IndependenceVerdict(
            "Holds", verdicts.to_bound(depth),
            note=("no constructible ideal reachable at this depth is a union "
                  "of proper constructible subideals; comparisons exact"),
        )
    # bounded lane: compare domains on a ball
    doms = []
    unknown = False
    for cs in csets:
        members, unk = hull.domain_ball(cs, radius)
        unknown = unknown or unk
        s = frozenset(x for x, _ in members)
        if s and s not in (d for d, _ in doms):
            doms.append((s, cs))
    for s, cs in doms:
        subs = [t for t, _ in doms if t != s and t < s]
        if subs and frozenset().union(*subs) == s:
            return IndependenceVerdict(
                "Fails", verdicts.to_bound(radius),
                target=hull.describe_cset(cs),
                note=("union coincidence on the ball; not an exact proof "
                      "(domains only compared to the stated radius)"),
            )
    note = "ball comparison only"
    if unknown:
        note += "; some memberships undecided"
    return IndependenceVerdict("Holds", verdicts.to_bound(min(depth, radius)), note=note)


def _minimal_cover(lane, target, subs):
    keep = list(subs)
    for cand in sorted(subs, key=repr):
        rest = [p for p in keep if p != cand]
        if rest and lane.union_covers(target, rest):
            keep = rest
    return keep


# ---------------------------------------------------------------------------
# right LCMs


@dataclass(frozen=True)
class RightLcmVerdict:
    kind: str  # Holds | Fails | Unknown
    provenance: verdicts.Provenance
    witness: str | None = None
    note: str = ""


def right_lcm_check(ctx: MonoidContext, depth: int = 3,
                    word_len: int | None = None,
                    radius: int = 8) -> RightLcmVerdict:
    """Is every nonempty constructible ideal at this depth principal?"""
    hull = Hull(ctx)
    gen = hull.generate(depth, word_len)
    csets = gen.constraint_sets()
    lane = hull.lane
    if lane is not None:
        for cs in csets:
            f = lane.form_of_cset(cs)
            if f is None:
                lane = None
                break
            if f.is_empty():
                continue
            if lane.principal_generator(f) is None:
                return RightLcmVerdict(
                    "Fails", verdicts.EXACT,
                    witness=f.describe(ctx),
                    note=(f"constructible ideal at depth {depth} is nonempty "
                          "but not of the form pP (decided exactly)"),
                )
        if lane is not None:
            return RightLcmVerdict(
                "Holds", verdicts.to_bound(depth),
                note=("every constructible ideal reachable at this depth is "
                      "principal; principality decided exactly"),
            )
    mul, inv = hull.group.mul, hull.group.inv
    stuck = None
    for cs in csets:
        members, unk = hull.domain_ball(cs, radius)
        if not members:
            continue
        found = False
        for p, _pword in sorted(members, key=lambda mw: (len(mw[1]), mw[1])):
            if any(hull.in_p(mul(c, p)).kind != "InP" for c in cs):
                continue  # pP <= E(C) not certified
            if all(hull.in_p(mul(inv(p), x)).kind == "InP" for x, _ in members):
                found = True
                break
        if not found:
            stuck = cs
            break
    if stuck is not None:
        return RightLcmVerdict(
            "Unknown", verdicts.to_bound(radius),
            witness=hull.describe_cset(stuck),
            note=("no generator found within the ball; a larger ball might "
                  "still contain one, so this is not a failure proof"),
        )
    return RightLcmVerdict(
        "Holds", verdicts.to_bound(radius),
        note=("each constructible ideal matches pP on the ball and pP is "
              "certified inside it"),
    )


# ---------------------------------------------------------------------------
# constructibility of P ∩ g^{-1} P


@dataclass(frozen=True)
class ToeplitzVerdict:
    kind: str  # Constructible | FailsToDepth | Unknown
    provenance: verdicts.Provenance
    expr: str | None = None
    evidence: tuple = ()
    note: str = ""


def toeplitz_check(ctx: MonoidContext, g, radius: int = 4,
                   witness_margin: int = 4) -> ToeplitzVerdict:
    """Analyze X = {x in P : g x in P} for a group element g.

    With an exact ideal lane X is itself a constructible ideal and is
    reported in closed form.  Otherwise, principal candidates p (elements of
    X inside the ball) are tried: a full ball match gives Constructible to
    the bound; excluding every candidate by an exact witness x in X with
    p^{-1} x not in P gives FailsToDepth.
    """
    if isinstance(g, str):
        g = ctx.group.canon(ctx.parse_group(g))
    hull = Hull(ctx)
    cs = frozenset({hull.group.identity(), g})
    if hull.lane is not None:
        form = hull.lane.form_of_cset(cs)
        if form is not None:
            return ToeplitzVerdict(
                "Constructible", verdicts.EXACT, expr=form.describe(ctx),
                note="closed ideal form; every such set is constructible here",
            )
    mul, inv = hull.group.mul, hull.group.inv
    big = ctx.ball(radius + witness_margin)
    small = {x: w for x, w in big.items() if len(w) <= radius}
    unknown = False
    pool = []
    for x, w in big.items():
        m = hull.in_p(mul(g, x))
        if m.kind == "Unknown":
            unknown = True
        if m.kind == "InP":
            pool.append((x, w))
    bx = [(x, w) for x, w in pool if len(w) <= radius]
    fmt = ctx.alphabet.format
    if not bx:
        if not pool and not unknown:
            return ToeplitzVerdict(
                "Constructible", verdicts.to_bound(radius + witness_margin),
                expr="empty",
                note="no element of the enlarged ball lands in P under g",
            )
        return ToeplitzVerdict(
            "Unknown", verdicts.to_bound(radius),
            note="no candidates inside the ball", )
    # try a principal match: candidates from the small ball, compared on the
    # enlarged ball so that a witness slightly past the candidate radius
    # still rules out a false match
    target = {x for x, _ in pool}
    for p, pword in sorted(bx, key=lambda mw: (len(mw[1]), mw[1])):
        match = {x for x in big
                 if hull.in_p(mul(inv(p), x)).kind == "InP"}
        if match == target:
            expr = "P" if not pword else f"{fmt(pword)}P"
            return ToeplitzVerdict(
                "Constructible", verdicts.to_bound(radius + witness_margin),
                expr=expr,
                note="candidate matches X on the enlarged ball; not an exact proof",
            )
    # try to exclude every candidate exactly
    evidence = []
    for p, pword in sorted(bx, key=lambda mw: (len(mw[1]), mw[1])):
        witness = None
        for x, w in pool:
            m = hull.in_p(mul(inv(p), x))
            if m.kind == "NotInP" and m.provenance.kind == "verified-exact":
                witness = (x, w)
                break
        if witness is None:
            return ToeplitzVerdict(
                "Unknown", verdicts.to_bound(radius),
                note=(f"candidate {fmt(pword)} matches no ball description and "
                      "no exact witness excludes it"),
            )
        evidence.append({
            "candidate": fmt(pword),
            "witness": fmt(witness[1]),
            "reason": "witness lies in X but candidate does not divide it",
        })
    note = ("every principal candidate within the ball is excluded by an "
            f"exact witness (witness pool radius {radius + witness_margin}); "
            "a constructible description would have to be principal here")
    if unknown:
        note += "; some memberships undecided"
    return ToeplitzVerdict(
        "FailsToDepth", verdicts.to_bound(radius),
        evidence=tuple(evidence), note=note,
    )
