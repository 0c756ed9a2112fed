"""Point-set inverse semigroups over integer windows.

A finite set D of integer vectors plays the role of a discrete point
pattern.  Triples [a, P, b] with P a finite subset of D and a, b marked
points of P multiply by sliding both patches into D so that the inner marks
meet; when no placement exists the product is zero.  Triples are stored
translation-normalized (lexicographically smallest patch point at the
origin), which realizes the translation-equivalence classes directly.

The grading [a, P, b] -> a - b into the translation group is idempotent
pure (difference zero forces the marks to coincide), so the orbit-sum
K-theory machinery applies: one summand per patch class, every summand a
trivial group because no nonzero translation fixes a finite patch.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import verdicts
from .ktheory import GroupDescriptor, LedgerEntry, formula, resolve


class TilingError(ValueError):
    """Bad point-set input or a failed structural check."""


class SizeLimit(TilingError):
    """The point set is too large for exhaustive patch enumeration."""


def _as_point(p, dim=None):
    if isinstance(p, int):
        p = (p,)
    pt = tuple(int(c) for c in p)
    if dim is not None and len(pt) != dim:
        raise TilingError(f"point {pt} has dimension {len(pt)}, want {dim}")
    return pt


def _shift(point, by, sign=1):
    return tuple(c + sign * d for c, d in zip(point, by))


def _shift_set(points, by, sign=1):
    return frozenset(_shift(p, by, sign) for p in points)


@dataclass(frozen=True)
class PointSet:
    """A finite set of distinct integer vectors of one dimension."""

    dim: int
    points: frozenset

    @staticmethod
    def of(points) -> "PointSet":
        pts = [_as_point(p) for p in points]
        if not pts:
            raise TilingError("a point set needs at least one point")
        dim = len(pts[0])
        pts = [_as_point(p, dim) for p in pts]
        if len(set(pts)) != len(pts):
            raise TilingError("points must be distinct")
        return PointSet(dim, frozenset(pts))

    @staticmethod
    def parse(text: str) -> "PointSet":
        """Parse "0,1,2" (integers) or "0,0; 1,0" (semicolon-split vectors)."""
        text = text.strip()
        if ";" in text:
            vecs = [tuple(int(c) for c in part.split(","))
                    for part in text.split(";") if part.strip()]
        else:
            vecs = [int(part) for part in text.split(",") if part.strip()]
        return PointSet.of(vecs)

    def sorted_points(self) -> list:
        return sorted(self.points)

    def describe_point(self, p) -> str:
        if self.dim == 1:
            return str(p[0])
        return "(" + ",".join(str(c) for c in p) + ")"

    def describe_patch(self, patch) -> str:
        return "{" + ",".join(self.describe_point(p)
                              for p in sorted(patch)) + "}"


@dataclass(frozen=True)
class PatchTriple:
    """[a, P, b]: a patch with two marked points, translation-normalized."""

    a: tuple
    patch: frozenset
    b: tuple

    @staticmethod
    def of(a, patch, b) -> "PatchTriple":
        pts = frozenset(_as_point(p) for p in patch)
        if not pts:
            raise TilingError("a patch must be nonempty")
        dim = len(next(iter(pts)))
        a, b = _as_point(a, dim), _as_point(b, dim)
        if a not in pts or b not in pts:
            raise TilingError("marked points must lie in the patch")
        base = min(pts)
        return PatchTriple(_shift(a, base, -1), _shift_set(pts, base, -1),
                           _shift(b, base, -1))

    def inverse(self) -> "PatchTriple":
        return PatchTriple(self.b, self.patch, self.a)

    def is_idempotent(self) -> bool:
        return self.a == self.b

    def grading(self) -> tuple:
        """The translation a - b this triple acts by."""
        return tuple(x - y for x, y in zip(self.a, self.b))

    def describe(self, D: PointSet) -> str:
        return (f"[{D.describe_point(self.a)}, {D.describe_patch(self.patch)}"
                f", {D.describe_point(self.b)}]")


def _placements(patch, D: PointSet) -> list:
    """All translations x with patch + x inside D."""
    out = set()
    anchor = min(patch)
    for d in D.points:
        x = tuple(c - e for c, e in zip(d, anchor))
        if all(_shift(p, x) in D.points for p in patch):
            out.add(x)
    return sorted(out)


def triple_mul(s: PatchTriple, t: PatchTriple,
               D: PointSet) -> PatchTriple | None:
    """Product of two triples over D; None is the zero element.

    Both patches are slid into D so that the right mark of ``s`` lands on
    the left mark of ``t``; the product glues the placed patches.  Any two
    valid placements differ by a common shift, so the normalized result
    cannot depend on the choice -- this is asserted, not assumed.
    """
    results = set()
    for x in _placements(s.patch, D):
        for y in _placements(t.patch, D):
            if _shift(s.b, x) != _shift(t.a, y):
                continue
            merged = _shift_set(s.patch, x) | _shift_set(t.patch, y)
            results.add(PatchTriple.of(_shift(s.a, x), merged,
                                       _shift(t.b, y)))
    if not results:
        return None
    if len(results) != 1:
        raise TilingError(
            f"product depends on the placement: {sorted(map(str, results))}")
    return results.pop()


# ---------------------------------------------------------------------------
# patch classes


def _parse_adjacency(pairs, dim) -> frozenset:
    out = set()
    for p, q in pairs:
        pp, qq = _as_point(p, dim), _as_point(q, dim)
        out.add((pp, qq))
        out.add((qq, pp))
    return frozenset(out)


def _connected(patch, adjacency) -> bool:
    pts = list(patch)
    seen = {pts[0]}
    frontier = [pts[0]]
    while frontier:
        p = frontier.pop()
        for q in patch:
            if q not in seen and (p, q) in adjacency:
                seen.add(q)
                frontier.append(q)
    return len(seen) == len(patch)


def patch_classes(D: PointSet, adjacency=None, cap: int = 20) -> list:
    """Nonempty subsets of D up to translation, as normalized patches.

    With ``adjacency`` (an iterable of point pairs), only patches whose
    points form a connected graph under the relation are kept -- the
    connected-support variant of the construction.  Deterministic order:
    by size, then lexicographically.
    """
    pts = D.sorted_points()
    if len(pts) > cap:
        raise SizeLimit(
            f"point set has {len(pts)} points; exhaustive patch enumeration "
            f"is capped at {cap}")
    adj = None
    if adjacency is not None:
        adj = _parse_adjacency(adjacency, D.dim)
    classes = set()
    for size in range(1, len(pts) + 1):
        for combo in combinations(pts, size):
            patch = frozenset(combo)
            if adj is not None and not _connected(patch, adj):
                continue
            base = min(patch)
            classes.add(_shift_set(patch, base, -1))
    return sorted(classes, key=lambda c: (len(c), sorted(c)))


def patch_stabilizer_check(classes) -> LedgerEntry:
    """Assert no nonzero translation fixes any patch; report the fact."""
    for patch in classes:
        base = min(patch)
        for other in patch:
            x = tuple(c - e for c, e in zip(other, base))
            if any(x) and _shift_set(patch, x) == patch:
                raise TilingError(
                    f"translation {x} fixes the finite patch {sorted(patch)}")
    return LedgerEntry(
        "patch stabilizers are all trivial", verdicts.EXACT,
        "a nonzero translation moves the least point of a finite patch, "
        "so only the zero translation fixes one; candidate shifts checked")


# ---------------------------------------------------------------------------
# the inverse semigroup on a small window


def gamma_elements(D: PointSet, adjacency=None, cap: int = 12) -> list:
    """All nonzero triples of the point-set inverse semigroup over D."""
    out = []
    for patch in patch_classes(D, adjacency=adjacency, cap=cap):
        for a in sorted(patch):
            for b in sorted(patch):
                out.append(PatchTriple(a, patch, b))
    return out


def grading_check(D: PointSet, adjacency=None) -> dict:
    """Exhaustive check that the grading is an idempotent-pure partial map.

    Multiplicativity on nonzero products, compatibility with inverses, and
    purity (grading zero happens only on idempotents) over every pair of
    triples; feasible for small windows only.
    """
    elements = gamma_elements(D, adjacency=adjacency)
    products = 0
    zeros = 0
    for s in elements:
        if s.inverse().grading() != tuple(-c for c in s.grading()):
            raise TilingError(f"grading ignores inverses at {s}")
        if any(s.grading()) and s.is_idempotent():
            raise TilingError(f"idempotent with nonzero grading: {s}")
        if not any(s.grading()) and not s.is_idempotent():
            raise TilingError(f"grading vanishes on non-idempotent {s}")
        for t in elements:
            st = triple_mul(s, t, D)
            if st is None:
                zeros += 1
                continue
            products += 1
            want = tuple(x + y for x, y in zip(s.grading(), t.grading()))
            if st.grading() != want:
                raise TilingError(
                    f"grading not multiplicative at {s} * {t}")
    return {
        "ok": True,
        "elements": len(elements),
        "nonzero_products": products,
        "zero_products": zeros,
        "provenance": verdicts.EXACT.as_json(),
    }


def inverse_law_check(D: PointSet, adjacency=None) -> dict:
    """Exhaustive inverse-semigroup laws over the window.

    s * s^-1 * s = s and the flipped law for every triple; idempotents
    commute pairwise; both checked literally through the multiplication.
    """
    elements = gamma_elements(D, adjacency=adjacency)
    for s in elements:
        si = s.inverse()
        back = triple_mul(triple_mul(s, si, D), s, D)
        if back != s:
            raise TilingError(f"s s^-1 s != s at {s}")
        back = triple_mul(triple_mul(si, s, D), si, D)
        if back != si:
            raise TilingError(f"s^-1 s s^-1 != s^-1 at {s}")
    idems = [s for s in elements if s.is_idempotent()]
    for e in idems:
        for f in idems:
            ef, fe = triple_mul(e, f, D), triple_mul(f, e, D)
            if ef != fe:
                raise TilingError(f"idempotents do not commute: {e}, {f}")
    return {
        "ok": True,
        "elements": len(elements),
        "idempotents": len(idems),
        "provenance": verdicts.EXACT.as_json(),
    }


# ---------------------------------------------------------------------------
# K-theory output


def gamma_ktheory(D: PointSet, adjacency=None, cap: int = 20):
    """Summand expression for the point-set inverse semigroup over D.

    One trivial-group summand per patch class; everything finite here is
    verified exactly (the window is given in full), and the lone analytic
    assumption is the Baum-Connes input for the abelian translation group.
    """
    classes = patch_classes(D, adjacency=adjacency, cap=cap)
    verified = [
        LedgerEntry(f"patch classes: {len(classes)}", verdicts.EXACT,
                    "complete enumeration of the window's patches up to "
                    "translation"),
        patch_stabilizer_check(classes),
        LedgerEntry("the grading [a,P,b] -> a-b is idempotent pure",
                    verdicts.EXACT,
                    "difference zero forces the marks to coincide, and "
                    "equal marks give an idempotent triple"),
    ]
    assumptions = [LedgerEntry(
        "the translation group is abelian, hence satisfies strong "
        "Baum-Connes", verdicts.assumed("literature"))]
    kind = "connected patches" if adjacency is not None else "patches"
    expr = formula(
        [(D.describe_patch(c), GroupDescriptor.trivial()) for c in classes],
        route="inverse-semigroup", bc="strong-bc", verified=verified,
        assumptions=assumptions,
        notes=(f"summands indexed by {kind} of the window up to translation",
               "the algebra is nonunital; no distinguished unit class"),
        name=f"point-set window ({len(D.points)} points, dim {D.dim})")
    return resolve(expr)
