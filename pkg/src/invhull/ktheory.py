"""Symbolic K-theory expressions for inverse-semigroup algebras.

The structural principle driving this module: when an inverse semigroup with
zero carries an idempotent-pure partial homomorphism to a group, and that
group satisfies the Baum-Connes conjecture with the coefficients the
construction needs, the K-theory of the reduced algebra decomposes as a
direct sum over orbit classes of nonzero idempotents, one summand per class,
each summand the K-theory of the stabilizer's group algebra.

Nothing analytic is computed here.  The module emits the decomposition as a
symbolic expression whose ledger cleanly separates finitely verified inputs
(orbit counts, stabilizer identifications, bounded ideal checks) from assumed
analytic hypotheses (Baum-Connes variants, literature facts).  Resolved
K-groups come from a small trust-tagged table of literature values
(docs/ktheory-table.md); no expression ever presents the decomposition as
unconditional.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import hull as hull_mod
from . import presentation, verdicts
from .orbits import OrbitChart, orbit_partition


class KTheoryError(ValueError):
    """A K-theory expression could not be built as requested."""


class IndependenceUnknown(KTheoryError):
    """The semigroup route was requested without an independence verdict."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict
        self.offered_route = "left-inverse-hull"


class IndependenceFails(KTheoryError):
    """The semigroup route was requested but independence fails."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict
        self.offered_route = "left-inverse-hull"


class UnsupportedPreset(KTheoryError):
    """The named preset is not implemented (deliberately or otherwise)."""


class PrerequisiteFailed(KTheoryError):
    """A locally checkable prerequisite of a preset report failed."""


# ---------------------------------------------------------------------------
# finitely generated abelian groups in canonical form


def _prime_powers(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _divisor_chain(values) -> tuple:
    """Canonical divisor chain of a multiset of integers >= 2.

    The chain d_1 | d_2 | ... | d_k presents the same group as the input
    summands: collect prime-power components, stack the largest together,
    then the next largest, and so on.
    """
    per_prime: dict = {}
    for v in values:
        v = int(v)
        if v < 1:
            raise KTheoryError(f"torsion order must be >= 1, got {v}")
        if v == 1:
            continue
        for p, e in _prime_powers(v).items():
            per_prime.setdefault(p, []).append(e)
    length = max((len(es) for es in per_prime.values()), default=0)
    chain = []
    for i in range(length):
        d = 1
        for p, es in per_prime.items():
            es_sorted = sorted(es, reverse=True)
            if i < len(es_sorted):
                d *= p ** es_sorted[i]
        chain.append(d)
    return tuple(reversed(chain))


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group: free rank plus a divisor chain."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise KTheoryError("rank must be >= 0")
        chain = tuple(self.torsion)
        if chain != _divisor_chain(chain):
            raise KTheoryError(
                f"torsion {chain} is not in canonical divisor-chain form; "
                "build values with FgAbelianGroup.of")

    @staticmethod
    def of(rank: int, torsion=()) -> "FgAbelianGroup":
        return FgAbelianGroup(rank, _divisor_chain(torsion))

    def direct_sum(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup.of(self.rank + other.rank,
                                 self.torsion + other.torsion)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def describe(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}Z" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def as_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion),
                "show": self.describe()}


ZERO_GROUP = FgAbelianGroup(0, ())
Z = FgAbelianGroup(1, ())


# ---------------------------------------------------------------------------
# group descriptors for summands


DESCRIPTOR_KINDS = ("trivial", "free-abelian", "finite-cyclic", "free",
                    "opaque")


@dataclass(frozen=True)
class GroupDescriptor:
    """What is known about a stabilizer group appearing in a summand."""

    kind: str
    n: int | None = None
    name: str = ""
    generators: tuple = ()

    def __post_init__(self):
        if self.kind not in DESCRIPTOR_KINDS:
            raise KTheoryError(f"unknown descriptor kind {self.kind!r}")
        if self.kind in ("free-abelian", "finite-cyclic", "free"):
            if self.n is None or self.n < 1:
                raise KTheoryError(f"{self.kind} needs a parameter n >= 1")

    @staticmethod
    def trivial() -> "GroupDescriptor":
        return GroupDescriptor("trivial")

    @staticmethod
    def free_abelian(n: int) -> "GroupDescriptor":
        return GroupDescriptor("free-abelian", n=n)

    @staticmethod
    def finite_cyclic(n: int) -> "GroupDescriptor":
        if n == 1:
            return GroupDescriptor("trivial")
        return GroupDescriptor("finite-cyclic", n=n)

    @staticmethod
    def free(n: int) -> "GroupDescriptor":
        return GroupDescriptor("free", n=n)

    @staticmethod
    def opaque(name: str, generators=()) -> "GroupDescriptor":
        return GroupDescriptor("opaque", name=name,
                               generators=tuple(generators))

    def describe(self) -> str:
        if self.kind == "trivial":
            return "trivial group"
        if self.kind == "free-abelian":
            return "Z" if self.n == 1 else f"Z^{self.n}"
        if self.kind == "finite-cyclic":
            return f"Z/{self.n}Z"
        if self.kind == "free":
            return f"free group on {self.n} generators"
        return self.name or "opaque group"

    def as_json(self):
        out = {"kind": self.kind, "show": self.describe()}
        if self.n is not None:
            out["n"] = self.n
        if self.name:
            out["name"] = self.name
        if self.generators:
            out["generators"] = [str(g) for g in self.generators]
        return out


def _element_order(group, g) -> int:
    e = group.identity
    x = g
    n = 1
    while x != e:
        x = group.mul(x, g)
        n += 1
        if n > len(group.elements):
            raise KTheoryError("order computation did not close")
    return n


def describe_finite_subgroup(group, elements) -> GroupDescriptor:
    """Descriptor for a subgroup of a finite group, given its elements."""
    members = tuple(elements)
    n = len(members)
    if n == 1:
        return GroupDescriptor.trivial()
    if any(_element_order(group, g) == n for g in members):
        return GroupDescriptor.finite_cyclic(n)
    return GroupDescriptor.opaque(f"subgroup of order {n}",
                                  generators=[str(g) for g in members])


# ---------------------------------------------------------------------------
# ledger entries


@dataclass(frozen=True)
class LedgerEntry:
    """One claim with its provenance: exact, bounded, or assumed."""

    claim: str
    provenance: verdicts.Provenance
    detail: str = ""

    def as_json(self):
        out = {"claim": self.claim, "provenance": self.provenance.as_json()}
        if self.detail:
            out["detail"] = self.detail
        return out


# ---------------------------------------------------------------------------
# the K-theory table (data, not code)


@dataclass(frozen=True)
class KTableEntry:
    """K-groups of the group algebra for one descriptor kind.

    ``k0``/``k1`` are either FgAbelianGroup values or one of the patterns
    "0", "Z", "Z^n", "Z^(2^(n-1))", "Z/nZ" with n the descriptor parameter.
    Entries are trust-tagged literature data; citations live in
    docs/ktheory-table.md.
    """

    kind: str
    k0: object
    k1: object
    citation: str


K_TABLE = (
    KTableEntry("trivial", "Z", "0",
                "the scalars; K0 is generated by the unit"),
    KTableEntry("finite-cyclic", "Z^n", "0",
                "group algebra of Z/nZ is the n-fold product of the scalars"),
    KTableEntry("free-abelian", "Z^(2^(n-1))", "Z^(2^(n-1))",
                "group algebra of Z^n is C(T^n); K-groups of the n-torus"),
    KTableEntry("free", "Z", "Z^n",
                "reduced algebra of a free group via the "
                "Pimsner-Voiculescu sequence"),
)


def _eval_pattern(pattern, n) -> FgAbelianGroup:
    if isinstance(pattern, FgAbelianGroup):
        return pattern
    if pattern == "0":
        return ZERO_GROUP
    if pattern == "Z":
        return Z
    if n is None:
        raise KTheoryError(f"pattern {pattern!r} needs a parameter n")
    if pattern == "Z^n":
        return FgAbelianGroup.of(n)
    if pattern == "Z^(2^(n-1))":
        return FgAbelianGroup.of(2 ** (n - 1))
    if pattern == "Z/nZ":
        return FgAbelianGroup.of(0, (n,))
    raise KTheoryError(f"unknown K-table pattern {pattern!r}")


# ---------------------------------------------------------------------------
# expressions


ROUTES = {
    "inverse-semigroup": (
        "sum over orbit classes of nonzero idempotents; each summand is the "
        "group algebra of the idempotent's stabilizer"),
    "partial-action": (
        "sum over orbit classes of the invariant basis of the partial "
        "action; each summand is the group algebra of a setwise stabilizer"),
    "left-inverse-hull": (
        "sum over orbit classes of nonempty constructible ideals of the "
        "left inverse hull; no independence hypothesis is needed"),
    "semigroup": (
        "sum over ideal classes of the semigroup itself; valid only under "
        "the independence condition"),
    "right-lcm": (
        "all constructible ideals are principal, so there is a single ideal "
        "class and the lone summand is the unit group"),
    "boundary-quotient": (
        "six-term sequence of the compact-operator extension applied to the "
        "K-groups of the ambient semigroup algebra"),
}

BC_VARIANTS = {
    "bc-coefficients": (
        "the enveloping group satisfies the Baum-Connes conjecture with the "
        "two coefficient algebras the construction attaches to the action"),
    "strong-bc": (
        "the enveloping group satisfies the strong Baum-Connes conjecture"),
}

CONCLUSIONS = {
    "bc-coefficients": ("the summand inclusions induce an isomorphism "
                        "on K-theory"),
    "strong-bc": ("the summand inclusions assemble to a KK-equivalence"),
}


@dataclass(frozen=True)
class Resolution:
    k0: FgAbelianGroup
    k1: FgAbelianGroup

    def describe(self) -> str:
        return f"K0 = {self.k0.describe()}, K1 = {self.k1.describe()}"

    def as_json(self):
        return {"K0": self.k0.as_json(), "K1": self.k1.as_json()}


@dataclass(frozen=True)
class KTheoryExpression:
    """Direct-sum K-theory expression with a provenance ledger.

    ``summands`` maps orbit-class labels to stabilizer descriptors;
    ``resolved`` is filled by :func:`resolve` when every summand kind is in
    the table.  ``assumptions`` and ``verified`` together form the ledger;
    the expression is never unconditional, so ``assumptions`` is non-empty
    unless everything was finitely verified.
    """

    name: str
    route: str
    summands: tuple = ()
    resolved: Resolution | None = None
    unit_class: str = ""
    assumptions: tuple = ()
    verified: tuple = ()
    notes: tuple = ()
    conclusion: str = ""

    def describe(self) -> str:
        if self.resolved is not None:
            return self.resolved.describe()
        if not self.summands:
            return "no summands"
        parts = [f"K(group algebra of {d.describe()}) at [{rep}]"
                 for rep, d in self.summands]
        return " + ".join(parts)

    def as_json(self):
        return {
            "name": self.name,
            "route": self.route,
            "route_meaning": ROUTES.get(self.route, ""),
            "summands": [{"orbit": rep, "stabilizer": d.as_json()}
                         for rep, d in self.summands],
            "resolved": (self.resolved.as_json()
                         if self.resolved is not None else None),
            "unit_class": self.unit_class,
            "assumptions": [e.as_json() for e in self.assumptions],
            "verified_inputs": [e.as_json() for e in self.verified],
            "notes": list(self.notes),
            "conclusion": self.conclusion,
        }


def formula(summands, route="inverse-semigroup", bc="bc-coefficients",
            independence=None, verified=(), assumptions=(), notes=(),
            unit_class="", name="") -> KTheoryExpression:
    """Assemble the direct-sum expression for the given orbit summands.

    ``summands`` is an iterable of (orbit label, GroupDescriptor).  The
    ``semigroup`` route demands an independence verdict and refuses to emit
    anything when it is missing, undecided, or failed -- the refusal names
    the ``left-inverse-hull`` route, which needs no independence hypothesis.
    """
    if route not in ROUTES:
        raise KTheoryError(f"unknown route {route!r}; "
                           f"available: {sorted(ROUTES)}")
    if bc not in BC_VARIANTS:
        raise KTheoryError(f"unknown Baum-Connes variant {bc!r}; "
                           f"available: {sorted(BC_VARIANTS)}")
    verified_entries = list(verified)
    assumed_entries = [LedgerEntry(BC_VARIANTS[bc], verdicts.assumed(
        "analytic hypothesis; never checked by this library"))]
    if route == "semigroup":
        offer = ("use route='left-inverse-hull' instead: its decomposition "
                 "needs no independence hypothesis")
        if independence is None:
            raise IndependenceUnknown(
                "the semigroup route needs an independence verdict and none "
                f"was supplied; run independence_check first, or {offer}")
        if independence.kind == "Fails":
            raise IndependenceFails(
                "independence fails, so the ideal classes of the semigroup "
                "do not index the summands; "
                f"witness: {independence.target} is the union of "
                f"{list(independence.parts)}; {offer}",
                verdict=independence)
        if independence.kind != "Holds":
            raise IndependenceUnknown(
                f"independence verdict is {independence.kind}; the semigroup "
                f"route needs Holds; {offer}", verdict=independence)
        verified_entries.append(LedgerEntry(
            "independence condition holds", independence.provenance,
            independence.note))
        if independence.provenance.kind == "verified-to-bound":
            assumed_entries.append(LedgerEntry(
                "independence beyond the checked bound",
                verdicts.assumed("bounded check only")))
    if route == "right-lcm":
        assumed_entries.append(LedgerEntry(
            "right LCM implies the independence condition",
            verdicts.assumed("literature")))
    assumed_entries.extend(assumptions)
    return KTheoryExpression(
        name=name,
        route=route,
        summands=tuple((str(rep), d) for rep, d in summands),
        resolved=None,
        unit_class=unit_class,
        assumptions=tuple(assumed_entries),
        verified=tuple(verified_entries),
        notes=tuple(notes),
        conclusion=CONCLUSIONS[bc],
    )


def combine(e1: KTheoryExpression, e2: KTheoryExpression) -> KTheoryExpression:
    """Direct sum of two expressions (resolution is recomputed on demand)."""
    if e1.route != e2.route:
        raise KTheoryError("cannot combine expressions from different routes")
    seen = set()
    ledger = []
    for entry in e1.assumptions + e2.assumptions:
        if entry not in seen:
            seen.add(entry)
            ledger.append(entry)
    seen_v = set()
    ver = []
    for entry in e1.verified + e2.verified:
        if entry not in seen_v:
            seen_v.add(entry)
            ver.append(entry)
    return KTheoryExpression(
        name=f"{e1.name} (+) {e2.name}" if e1.name or e2.name else "",
        route=e1.route,
        summands=e1.summands + e2.summands,
        resolved=None,
        unit_class=e1.unit_class,
        assumptions=tuple(ledger),
        verified=tuple(ver),
        notes=e1.notes + e2.notes,
        conclusion=e1.conclusion,
    )


TABLE_SOURCE = "K-theory table (docs/ktheory-table.md)"


def resolve(expr: KTheoryExpression, table=K_TABLE,
            extra=()) -> KTheoryExpression:
    """Fill in K0/K1 by resolving every summand through the table.

    Unresolved summands (opaque kinds or kinds missing from the table) leave
    the expression symbolic, with a note naming the first offender.  A
    successful resolution adds one trust-tag ledger entry naming the table
    rows that were used.
    """
    rows = {}
    for entry in tuple(table) + tuple(extra):
        rows[entry.kind] = entry
    k0, k1 = ZERO_GROUP, ZERO_GROUP
    used = []
    for rep, desc in expr.summands:
        row = rows.get(desc.kind)
        if row is None:
            return replace(expr, resolved=None, notes=expr.notes + (
                f"summand at [{rep}] ({desc.describe()}) has no table "
                "entry; the expression stays symbolic",))
        k0 = k0.direct_sum(_eval_pattern(row.k0, desc.n))
        k1 = k1.direct_sum(_eval_pattern(row.k1, desc.n))
        if desc.kind not in used:
            used.append(desc.kind)
    assumptions = expr.assumptions
    if used:
        entry = LedgerEntry(
            "K-groups of the summand kinds: " + ", ".join(used),
            verdicts.assumed(TABLE_SOURCE),
            "; ".join(f"{k}: {rows[k].citation}" for k in used))
        if entry not in assumptions:
            assumptions = assumptions + (entry,)
    return replace(expr, resolved=Resolution(k0, k1),
                   assumptions=assumptions)


# ---------------------------------------------------------------------------
# expressions from finite partial actions


def expression_from_action(action, name="",
                           bc="bc-coefficients") -> KTheoryExpression:
    """Summand expression for a bundled finite partial action.

    Orbits and stabilizers are enumerated exhaustively (the orbit charts
    re-verify the stabilizer subgroup laws along the way), so every finite
    input lands in the verified part of the ledger.
    """
    if getattr(action.group, "windowed", False):
        raise KTheoryError(
            "stabilizer identification needs a finite acting group; "
            "windowed integer groups have no complete stabilizer data")
    parts = orbit_partition(action)
    summands = []
    verified = [LedgerEntry(
        f"orbit classes of the basis: {len(parts)}", verdicts.EXACT,
        "exhaustive enumeration; single-move reachability asserted")]
    for orbit in parts:
        rep = orbit[0]
        chart = OrbitChart(action, rep)
        desc = describe_finite_subgroup(action.group, chart.stab)
        summands.append((str(rep), desc))
        verified.append(LedgerEntry(
            f"stabilizer at {rep}: {desc.describe()}", verdicts.EXACT,
            f"orbit size {len(orbit)}; subgroup laws checked"))
    return formula(summands, route="partial-action", bc=bc,
                   verified=verified, name=name or "partial action")


# ---------------------------------------------------------------------------
# ideal classes through the exact lanes


@dataclass(frozen=True)
class IdealClass:
    representative: str
    members: tuple
    stabilizer: GroupDescriptor
    stabilizer_note: str
    contains_whole_monoid: bool


@dataclass(frozen=True)
class ClassDecomposition:
    classes: tuple
    provenance: verdicts.Provenance
    form_count: int

    def as_json(self):
        return {
            "classes": [{
                "representative": c.representative,
                "members": list(c.members),
                "stabilizer": c.stabilizer.as_json(),
                "stabilizer_note": c.stabilizer_note,
                "contains_whole_monoid": c.contains_whole_monoid,
            } for c in self.classes],
            "provenance": self.provenance.as_json(),
            "form_count": self.form_count,
        }


def _stabilizer_of_form(form) -> tuple:
    """(descriptor, why it is trivial) for an exact-lane ideal form.

    Every element fixing the ideal acts as translation by its group label
    (the grading is idempotent pure); for each lane kind a translation
    fixing the ideal is forced to be the identity.
    """
    if isinstance(form, hull_mod.VectorIdeal):
        return (GroupDescriptor.trivial(),
                "a translation fixing m+N^k fixes its corner m, so only "
                "the identity translation fixes the ideal")
    if isinstance(form, hull_mod.WordIdeal):
        return (GroupDescriptor.trivial(),
                "g.(wP) = wP forces the reduced word g*w to equal w, "
                "so g is the identity")
    if isinstance(form, hull_mod.IntIdeal):
        return (GroupDescriptor.trivial(),
                "a translation fixing a value set fixes its least "
                "element, so the shift is zero")
    raise KTheoryError(f"no stabilizer rule for form {form!r}")


def ideal_orbit_classes(ctx, depth: int = 3,
                        word_len: int | None = None) -> ClassDecomposition:
    """Nonempty constructible ideals at this depth, up to translation.

    Two ideals are identified when a monoid generator moves one onto the
    other (the symmetric-transitive closure of X ~ pX); single-generator
    moves generate the full orbit relation because every hull element is a
    zigzag of generator moves and the ideal family is closed under each
    step.  Classes are relative to the generated family, hence bounded.
    """
    h = hull_mod.Hull(ctx)
    if h.lane is None:
        raise KTheoryError(
            "ideal classes need an exact ideal lane (free, free-abelian or "
            "numerical monoids); this monoid only supports ball comparisons")
    gen = h.generate(depth, word_len)
    forms = []
    form_cset = {}
    for cs in gen.constraint_sets():
        f = h.lane.form_of_cset(cs)
        if f is None or f.is_empty():
            continue
        if f not in form_cset:
            forms.append(f)
            form_cset[f] = cs
    index = {f: i for i, f in enumerate(forms)}
    parent = list(range(len(forms)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    mul, inv = h.group.mul, h.group.inv
    alpha = ctx.alphabet
    gens = [ctx.element(alpha.char(n)) for n in alpha.names]
    for f in forms:
        cs = form_cset[f]
        for p in gens:
            moved_cs = frozenset({mul(c, inv(p)) for c in cs} | {inv(p)})
            g = h.lane.form_of_cset(moved_cs)
            if g is None or g.is_empty():
                continue
            if g == f:
                raise KTheoryError(
                    "a generator move fixed an ideal; the triviality "
                    "argument for stabilizers would be wrong here")
            if g in index:
                union(index[f], index[g])
    whole = h.lane.form_of_cset(frozenset())
    buckets = {}
    for i, f in enumerate(forms):
        buckets.setdefault(find(i), []).append(f)
    classes = []
    for root in sorted(buckets):
        members = buckets[root]
        rep = whole if whole in members else members[0]
        desc, why = _stabilizer_of_form(rep)
        classes.append(IdealClass(
            representative=rep.describe(ctx),
            members=tuple(m.describe(ctx) for m in members),
            stabilizer=desc,
            stabilizer_note=why,
            contains_whole_monoid=whole in members,
        ))
    classes.sort(key=lambda c: (not c.contains_whole_monoid,
                                c.representative))
    return ClassDecomposition(tuple(classes), verdicts.to_bound(depth),
                              len(forms))


def semigroup_route_report(ctx, route: str = "semigroup", depth: int = 3,
                           bc: str = "strong-bc") -> KTheoryExpression:
    """Ideal-class K-theory expression for an exact-lane monoid.

    The ``semigroup`` route runs the independence check first and refuses on
    Fails/Unknown; the ``left-inverse-hull`` route proceeds without it.
    """
    if route not in ("semigroup", "left-inverse-hull"):
        raise KTheoryError(
            f"route {route!r} is not an ideal-class route; use 'semigroup' "
            "or 'left-inverse-hull'")
    independence = None
    if route == "semigroup":
        independence = hull_mod.independence_check(ctx, depth=depth)
    decomp = ideal_orbit_classes(ctx, depth=depth)
    summands = []
    verified = [LedgerEntry(
        f"ideal classes at depth {depth}: {len(decomp.classes)}",
        decomp.provenance,
        f"{decomp.form_count} distinct nonempty constructible ideals, "
        "merged along generator moves")]
    unit_class = ""
    for cls in decomp.classes:
        summands.append((cls.representative, cls.stabilizer))
        verified.append(LedgerEntry(
            f"stabilizer of the class of {cls.representative}: "
            f"{cls.stabilizer.describe()}",
            verdicts.EXACT, cls.stabilizer_note))
        if cls.contains_whole_monoid:
            unit_class = ("[1]_0 generates the summand of the class "
                          f"of {cls.representative}")
    assumptions = [LedgerEntry(
        "classes beyond the generation depth are not enumerated",
        verdicts.assumed("bounded generation"))]
    bc_note = ()
    if bc == "strong-bc":
        bc_note = ("strong Baum-Connes holds for free and abelian "
                   "enveloping groups (Haagerup property)",)
    return formula(summands, route=route, bc=bc, independence=independence,
                   verified=verified, assumptions=assumptions,
                   notes=bc_note, unit_class=unit_class,
                   name=f"{ctx.name}: ideal-class decomposition")


# ---------------------------------------------------------------------------
# preset reports


def _units_entry(ctx) -> LedgerEntry:
    if not ctx.presentation.trivial_units_only():
        raise PrerequisiteFailed(
            "a defining relation has an empty side, so the unit group need "
            "not be trivial and the single-summand route does not apply")
    return LedgerEntry(
        "unit group of the monoid is trivial", verdicts.EXACT,
        "no defining relation has an empty side, so no nonempty word can "
        "represent the unit")


def _rlcm_entry(ctx, depth, radius) -> LedgerEntry:
    rlcm = hull_mod.right_lcm_check(ctx, depth=depth, radius=radius)
    if rlcm.kind == "Fails":
        raise PrerequisiteFailed(
            f"right-LCM check failed: {rlcm.witness} is a nonempty "
            "constructible ideal with no principal generator; the "
            "single-summand route does not apply")
    return LedgerEntry(
        f"right-LCM check: {rlcm.kind}", rlcm.provenance, rlcm.note)


def _single_unit_summand(name, bc, verified, assumptions, notes=()):
    expr = formula(
        [("P", GroupDescriptor.trivial())], route="right-lcm", bc=bc,
        verified=verified, assumptions=assumptions, notes=notes,
        unit_class="[1]_0 generates K0", name=name)
    return resolve(expr)


def report_artin(coxeter=None, depth: int = 2, radius: int = 4,
                 bc: str = "bc-coefficients") -> KTheoryExpression:
    """Artin-monoid report: one trivial summand, so (Z, 0)."""
    coxeter = coxeter or {("a", "b"): 3}
    ctx = presentation.preset_artin(coxeter)
    verified = [_units_entry(ctx), _rlcm_entry(ctx, depth, radius)]
    assumptions = [
        LedgerEntry("the monoid is right LCM beyond the checked depth",
                    verdicts.assumed("literature: Artin monoids are "
                                     "right LCM")),
        LedgerEntry("the monoid embeds into its enveloping group",
                    verdicts.assumed("literature: Artin monoids embed into "
                                     "Artin groups")),
    ]
    notes = ("whether the enveloping group satisfies Baum-Connes is open "
             "in general and must be asserted per matrix",
             "the Toeplitz condition is not known for general Artin "
             "monoids; this route never needs it")
    return _single_unit_summand(f"{ctx.name}: K-theory report", bc,
                                verified, assumptions, notes)


def report_bs(k: int, l: int, depth: int = 2, radius: int = 5,
              toeplitz_radius: int = 4) -> KTheoryExpression:
    """Baumslag-Solitar-monoid report: one trivial summand, so (Z, 0).

    For the sign patterns where the Toeplitz condition is known to fail
    (k < -1 with l > 0, or k > 1 with l < 0) the report carries the bounded
    failure evidence for the witness element a b a^-1: every principal
    candidate b^i a b^j inside the ball is excluded by an exact witness.
    """
    ctx = presentation.preset_bs(k, l)
    verified = [_units_entry(ctx), _rlcm_entry(ctx, depth, radius)]
    assumptions = [
        LedgerEntry("the monoid is right LCM beyond the checked depth",
                    verdicts.assumed("literature")),
        LedgerEntry("the monoid embeds into its enveloping group",
                    verdicts.assumed("literature: normal forms")),
        LedgerEntry("the enveloping group has the Haagerup property, hence "
                    "satisfies strong Baum-Connes",
                    verdicts.assumed("literature")),
    ]
    notes = ["the unital embedding of the scalars is a KK-equivalence "
             "(strong Baum-Connes holds, so the strong conclusion applies)"]
    if (k < -1 and l > 0) or (k > 1 and l < 0):
        tv = hull_mod.toeplitz_check(ctx, "aba^-1", radius=toeplitz_radius)
        notes.append(
            "the Toeplitz condition fails here, so principal-ideal indexing "
            "of the summands is unavailable; the ideal-class route used "
            "above does not need it")
        verified.append(LedgerEntry(
            f"Toeplitz check for a b a^-1: {tv.kind}", tv.provenance,
            tv.note + " | " + "; ".join(
                f"candidate {e['candidate']} excluded by witness "
                f"{e['witness']}" for e in tv.evidence)))
    return _single_unit_summand(f"{ctx.name}: K-theory report", "strong-bc",
                                verified, assumptions, tuple(notes))


def _letter_counts(word: str) -> dict:
    out = {}
    for ch in word:
        out[ch] = out.get(ch, 0) + 1
    return out


def right_lcm_sufficient(ctx) -> tuple:
    """(holds, reason) for the one-relator right-LCM sufficient condition.

    With relation u = v (first letters distinct), the monoid is right LCM
    when the words have equal length, or when the shorter word uses some
    letter strictly more often than the longer one does.
    """
    (u, v), = ctx.presentation.relations
    if len(u) > len(v):
        u, v = v, u
    if len(u) == len(v):
        return True, "the relation sides have equal length"
    cu, cv = _letter_counts(u), _letter_counts(v)
    for ch, n in cu.items():
        if n > cv.get(ch, 0):
            name = ctx.alphabet.format(ch)
            return True, (f"the shorter side uses {name} strictly more "
                          "often than the longer side")
    return False, ("the sides have different lengths and no letter is used "
                   "more often on the shorter side")


def report_one_relator(letters="a b c", u="ab", v="ca", depth: int = 1,
                       radius: int = 3) -> KTheoryExpression:
    """One-relator-monoid report: one trivial summand, so (Z, 0)."""
    ctx = presentation.preset_one_relator(letters, u, v)
    ok, reason = right_lcm_sufficient(ctx)
    if not ok:
        raise PrerequisiteFailed(
            f"the right-LCM sufficient condition fails: {reason}; "
            "no single-summand report is emitted")
    verified = [
        _units_entry(ctx),
        LedgerEntry("right-LCM sufficient condition holds", verdicts.EXACT,
                    reason),
        _rlcm_entry(ctx, depth, radius),
    ]
    assumptions = [
        LedgerEntry("the sufficient condition implies right LCM",
                    verdicts.assumed("literature")),
        LedgerEntry("the monoid embeds into its enveloping group "
                    "(relation sides start with distinct letters)",
                    verdicts.assumed("literature")),
        LedgerEntry("one-relator groups satisfy strong Baum-Connes",
                    verdicts.assumed("literature")),
    ]
    size = len(ctx.alphabet)
    notes = ["the unital embedding of the scalars is a KK-equivalence"]
    if size >= 3:
        notes.append(
            f"alphabet size {size} >= 3: the boundary-quotient report is "
            "available via the one_relator_boundary preset")
    return _single_unit_summand(f"{ctx.name}: K-theory report", "strong-bc",
                                verified, assumptions, tuple(notes))


def report_one_relator_boundary(size) -> KTheoryExpression:
    """Boundary-quotient report keyed on the alphabet size.

    For 3 <= size < infinity the quotient of the semigroup algebra by the
    compacts has (K0, [1], K1) = (Z/(size-2)Z, 1, 0); the infinite-alphabet
    case has no compact ideal and gives (Z, 1, 0).
    """
    infinite = size in ("infinite", "inf", None) or size == float("inf")
    if not infinite:
        size = int(size)
        if size < 3:
            raise KTheoryError(
                "the boundary-quotient formula needs alphabet size >= 3")
    assumptions = [
        LedgerEntry("the boundary quotient is purely infinite simple and "
                    "the quotient map kernel is the compacts (empty kernel "
                    "for an infinite alphabet)",
                    verdicts.assumed("literature")),
        LedgerEntry("the ambient semigroup algebra has K-groups (Z, 0) "
                    "with K0 generated by the unit; its own ledger "
                    "(one_relator preset) carries over",
                    verdicts.assumed("one_relator route")),
    ]
    if infinite:
        resolved = Resolution(Z, ZERO_GROUP)
        notes = (
            "infinite alphabet: the semigroup algebra equals its boundary "
            "quotient",
            "if nuclear, the algebra is the infinite Cuntz algebra O_inf",
        )
        label = "infinite alphabet"
        unit = "1 (generates K0 = Z)"
    else:
        m = size - 2
        resolved = Resolution(FgAbelianGroup.of(0, (m,)), ZERO_GROUP)
        notes = (
            f"if nuclear, the boundary quotient is the Cuntz algebra "
            f"O_{size - 1}",
            f"if nuclear, the ambient algebra is the extension "
            f"E^-1_{size - 1} of O_{size - 1} by the compacts",
            "nuclear ambient algebras over equal alphabet sizes are "
            "isomorphic; distinct sizes are not",
        )
        label = f"alphabet size {size}"
        unit = "1"
        if m == 1:
            notes = notes + (
                "K0 is the zero group here, so the unit class vanishes",)
    return KTheoryExpression(
        name=f"one-relator boundary quotient ({label})",
        route="boundary-quotient",
        summands=(),
        resolved=resolved,
        unit_class=unit,
        assumptions=tuple(assumptions),
        verified=(),
        notes=notes,
        conclusion="K-groups of the boundary quotient via the six-term "
                   "sequence",
    )


def report_congruence(**_params):
    """Deliberate stub: the congruence-monoid family is out of scope."""
    raise UnsupportedPreset(
        "congruence-monoid reports are not implemented: they need the ring "
        "of algebraic integers of a number field, prime factorization of "
        "its ideals, ray-class-style quotients of the ideal group and unit "
        "groups of orders -- number-theoretic machinery outside this "
        "library.  The literature computes those K-groups and shows the "
        "left and right regular algebras are KK-equivalent there; no "
        "finite shadow of that computation is attempted here.")


def report_numerical(generators=(2, 3), depth: int = 3,
                     route: str = "semigroup") -> KTheoryExpression:
    ctx = presentation.preset_numerical(tuple(generators))
    return semigroup_route_report(ctx, route=route, depth=depth)


def report_free(letters="a b", depth: int = 2,
                route: str = "semigroup") -> KTheoryExpression:
    ctx = presentation.preset_free(letters)
    return semigroup_route_report(ctx, route=route, depth=depth)


def report_free_abelian(n: int = 1, depth: int = 2,
                        route: str = "semigroup") -> KTheoryExpression:
    ctx = presentation.preset_free_abelian(n)
    return semigroup_route_report(ctx, route=route, depth=depth)


PRESET_REPORTS = {
    "artin": report_artin,
    "bs": report_bs,
    "one_relator": report_one_relator,
    "one_relator_boundary": report_one_relator_boundary,
    "congruence": report_congruence,
    "numerical": report_numerical,
    "free": report_free,
    "free_abelian": report_free_abelian,
}


def preset_report(name: str, **params) -> KTheoryExpression:
    """Dispatch to a named preset report; resolved where the table allows."""
    try:
        builder = PRESET_REPORTS[name]
    except KeyError:
        raise UnsupportedPreset(
            f"unknown preset {name!r}; available: "
            f"{sorted(PRESET_REPORTS)}") from None
    expr = builder(**params)
    if expr.resolved is None and expr.summands:
        expr = resolve(expr)
    return expr


def refusal_as_json(exc: KTheoryError) -> dict:
    """Machine-readable rendering of a route refusal (for reports)."""
    out = {"refusal": type(exc).__name__, "message": str(exc)}
    verdict = getattr(exc, "verdict", None)
    if verdict is not None:
        out["verdict"] = {
            "kind": verdict.kind,
            "provenance": verdict.provenance.as_json(),
            "target": getattr(verdict, "target", None),
            "parts": list(getattr(verdict, "parts", ())),
            "note": verdict.note,
        }
    offered = getattr(exc, "offered_route", None)
    if offered:
        out["offered_route"] = offered
    return out
