"""Partial group actions on finite semilattices and the two constructions
relating them to inverse semigroups with an idempotent-pure group coordinate.

``induced_action`` (semigroup -> action): a finite inverse semigroup S with
zero and a group coordinate sigma yields theta_g(s^-1 s) = s s^-1 over all s
with sigma(s) = g, a partial action on the idempotent semilattice.

``crossed_system`` (action -> semigroup): pairs (g, e) with e a nonzero
element of dom(theta_g), multiplied by
    (h, W) (g, V) = (hg, theta_{g^-1}(W ^ theta_g(V)))
and zero whenever the meet vanishes.

``roundtrip_check`` verifies that s -> (sigma(s), s^-1 s) is an isomorphism
onto the crossed system of the induced action.

Windowed actions model an infinite action restricted to a finite window;
operations that would leave the window raise ActionUndefined with
``windowed=True`` and validation counts them as skipped rather than failed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .semilattice import FiniteSemilattice, atoms_semilattice, chain_semilattice


class ActionError(ValueError):
    pass


class NotIdempotentPure(ActionError):
    pass


class NotInvariantDomain(ActionError):
    pass


class ActionUndefined(ActionError):
    def __init__(self, msg, windowed=False):
        super().__init__(msg)
        self.windowed = windowed


# ---------------------------------------------------------------------------
# groups given by tables


class FiniteGroup:
    def __init__(self, elements, mul_fn, identity, name=""):
        self.elements = tuple(elements)
        self.identity = identity
        self.name = name
        self.windowed = False
        self._mul = {(a, b): mul_fn(a, b) for a in self.elements for b in self.elements}
        self._inv = {}
        for a in self.elements:
            for b in self.elements:
                if self._mul[(a, b)] == identity and self._mul[(b, a)] == identity:
                    self._inv[a] = b
                    break
            else:
                raise ActionError(f"no inverse for {a!r}")
        for a in self.elements:
            for b in self.elements:
                if self._mul[(a, b)] not in self.elements:
                    raise ActionError("multiplication leaves the element set")
                for c in self.elements:
                    if self._mul[(self._mul[(a, b)], c)] != self._mul[(a, self._mul[(b, c)])]:
                        raise ActionError("multiplication not associative")

    def mul(self, a, b):
        return self._mul[(a, b)]

    def inv(self, a):
        return self._inv[a]

    def __len__(self):
        return len(self.elements)


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(range(n), lambda a, b: (a + b) % n, 0, name=f"Z/{n}")


def symmetric_group_3() -> FiniteGroup:
    els = sorted(permutations(range(3)))

    def mul(p, q):  # apply q first, then p
        return tuple(p[q[i]] for i in range(3))

    return FiniteGroup(els, mul, (0, 1, 2), name="S3")


class WindowedIntGroup:
    """The integers restricted to [-window, window]; sums may escape."""

    def __init__(self, window: int):
        self.window = window
        self.elements = tuple(range(-window, window + 1))
        self.identity = 0
        self.windowed = True

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def __contains__(self, a):
        return -self.window <= a <= self.window

    def __len__(self):
        return len(self.elements)


# ---------------------------------------------------------------------------
# finite inverse semigroups


@dataclass
class FiniteInverseSemigroup:
    elements: tuple
    table: dict
    zero: object = None
    name: str = ""
    _inv: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.validate()

    def mul(self, a, b):
        return self.table[(a, b)]

    def inv(self, a):
        return self._inv[a]

    def idempotents(self) -> tuple:
        return tuple(e for e in self.elements if self.mul(e, e) == e)

    def nonzero(self) -> tuple:
        return tuple(s for s in self.elements if s != self.zero)

    def validate(self) -> None:
        els = self.elements
        for a in els:
            for b in els:
                if (a, b) not in self.table or self.table[(a, b)] not in els:
                    raise ActionError(f"product missing or escapes at {a!r},{b!r}")
        for a in els:
            for b in els:
                ab = self.mul(a, b)
                for c in els:
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)):
                        raise ActionError(f"not associative at {a!r},{b!r},{c!r}")
        self._inv = {}
        for s in els:
            cands = [t for t in els
                     if self.mul(self.mul(s, t), s) == s
                     and self.mul(self.mul(t, s), t) == t]
            if len(cands) != 1:
                raise ActionError(
                    f"{s!r} has {len(cands)} generalized inverses; need exactly 1")
            self._inv[s] = cands[0]
        if self.zero is not None:
            z = self.zero
            if any(self.mul(z, s) != z or self.mul(s, z) != z for s in els):
                raise ActionError("declared zero is not absorbing")

    def idempotent_semilattice(self) -> FiniteSemilattice:
        if self.zero is None:
            raise ActionError("idempotent semilattice needs a zero element")
        idems = [e for e in self.idempotents() if e != self.zero]
        return FiniteSemilattice.from_meet(idems, self.mul, zero=self.zero)


# ---------------------------------------------------------------------------
# partial actions


@dataclass
class SemilatticePartialAction:
    lattice: FiniteSemilattice
    group: object
    theta: dict  # g -> {e in dom(theta_g): image}
    windowed: bool = False
    escapes: frozenset = frozenset()  # (g, e) pairs truncated by the window
    name: str = ""

    def source_dom(self, g) -> frozenset:
        return frozenset(self.theta.get(g, {}).keys())

    def image_dom(self, g) -> frozenset:
        return frozenset(self.theta.get(g, {}).values())

    def defined(self, g, e) -> bool:
        return e == self.lattice.zero or e in self.theta.get(g, {})

    def act(self, g, e):
        if e == self.lattice.zero:
            return e
        m = self.theta.get(g, {})
        if e in m:
            return m[e]
        raise ActionUndefined(
            f"theta_{g!r} undefined at {e!r}",
            windowed=self.windowed and (g, e) in self.escapes,
        )

    def validate(self) -> dict:
        lat, G = self.lattice, self.group
        skipped = 0
        ident = self.theta.get(G.identity, {})
        for e in lat.nonzero():
            if ident.get(e) != e:
                raise ActionError(f"theta_identity must fix {e!r}")
        for g, m in self.theta.items():
            vals = list(m.values())
            if len(set(vals)) != len(vals):
                raise ActionError(f"theta_{g!r} not injective")
            gi = G.inv(g)
            back = self.theta.get(gi, {})
            for e, f in m.items():
                if back.get(f) != e:
                    raise ActionError(f"theta_{gi!r} does not invert theta_{g!r}")
            dom = set(m)
            for f in dom:
                for e in lat.down_set(f):
                    if e not in dom:
                        if self.windowed and (g, e) in self.escapes:
                            skipped += 1
                            continue
                        raise NotInvariantDomain(
                            f"dom(theta_{g!r}) misses {e!r} below {f!r}")
            for e in dom:
                for f in dom:
                    w = lat.meet(e, f)
                    img = lat.meet(m[e], m[f])
                    if w == lat.zero:
                        if img != lat.zero:
                            raise ActionError(
                                f"theta_{g!r} maps disjoint {e!r},{f!r} to "
                                "non-disjoint images")
                    elif w in dom:
                        if m[w] != img:
                            raise ActionError(f"theta_{g!r} not meet-preserving")
        for g in self.theta:
            for h in self.theta:
                gh = G.mul(g, h)
                if gh not in self.theta:
                    if self.windowed:
                        skipped += 1
                        continue
                    raise ActionError(f"product {gh!r} carries no map")
                comp_dom = [e for e, f in self.theta[h].items()
                            if f in self.theta[g]]
                for e in comp_dom:
                    f = self.theta[g][self.theta[h][e]]
                    if e not in self.theta[gh]:
                        if self.windowed and (gh, e) in self.escapes:
                            skipped += 1
                            continue
                        raise ActionError(
                            f"theta_{gh!r} does not extend the composite at {e!r}")
                    if self.theta[gh][e] != f:
                        raise ActionError(
                            f"composite and theta_{gh!r} disagree at {e!r}")
        return {"ok": True, "skipped_escapes": skipped}


# ---------------------------------------------------------------------------
# the two constructions


def induced_action(S: FiniteInverseSemigroup, sigma: dict, group) -> SemilatticePartialAction:
    """Partial action of ``group`` on the idempotents of S from the group
    coordinate sigma.  Raises NotIdempotentPure when a non-idempotent has
    trivial coordinate, and ActionError if sigma is not multiplicative."""
    z = S.zero
    idems = set(S.idempotents())
    for s in S.nonzero():
        if s not in sigma:
            raise ActionError(f"sigma missing on {s!r}")
        if s in idems and sigma[s] != group.identity:
            raise ActionError(f"idempotent {s!r} must have trivial coordinate")
        if sigma[s] == group.identity and s not in idems:
            raise NotIdempotentPure(f"{s!r} has trivial coordinate but is not idempotent")
    for a in S.nonzero():
        for b in S.nonzero():
            ab = S.mul(a, b)
            if ab != z and sigma[ab] != group.mul(sigma[a], sigma[b]):
                raise ActionError(f"sigma not multiplicative at {a!r},{b!r}")
    theta = {g: {} for g in group.elements}
    for s in S.nonzero():
        g = sigma[s]
        src = S.mul(S.inv(s), s)
        tgt = S.mul(s, S.inv(s))
        m = theta[g]
        if src in m and m[src] != tgt:
            raise ActionError(
                f"action ill-defined: coordinate {g!r} sends {src!r} to both "
                f"{m[src]!r} and {tgt!r}")
        m[src] = tgt
    act = SemilatticePartialAction(S.idempotent_semilattice(), group, theta,
                                   name=f"induced from {S.name or 'S'}")
    act.validate()
    return act


def crossed_system(action: SemilatticePartialAction):
    """The inverse semigroup of pairs (g, e), e nonzero in dom(theta_g),
    with zero adjoined; returns (semigroup, sigma) where sigma reads off the
    group coordinate."""
    if action.windowed:
        raise ActionError("crossed system needs a total (non-windowed) action")
    lat, G = action.lattice, action.group
    zero = "0"
    pairs = [(g, e) for g in G.elements for e in sorted(
        action.source_dom(g), key=lat.elements.index)]
    elements = [zero] + pairs
    table = {}
    for x in elements:
        table[(zero, x)] = zero
        table[(x, zero)] = zero
    for h, w in pairs:
        for g, v in pairs:
            m = lat.meet(w, action.act(g, v))
            if m == lat.zero:
                table[((h, w), (g, v))] = zero
            else:
                table[((h, w), (g, v))] = (G.mul(h, g), action.act(G.inv(g), m))
    S = FiniteInverseSemigroup(tuple(elements), table, zero=zero,
                               name=f"crossed({action.name or 'action'})")
    sigma = {p: p[0] for p in pairs}
    return S, sigma


def roundtrip_check(S: FiniteInverseSemigroup, sigma: dict, group) -> dict:
    """Verify s -> (sigma(s), s^-1 s) is an isomorphism onto the crossed
    system of the induced action, compatible with coordinates."""
    action = induced_action(S, sigma, group)
    T, sigma_t = crossed_system(action)
    rho = {S.zero: T.zero}
    for s in S.nonzero():
        rho[s] = (sigma[s], S.mul(S.inv(s), s))
    errors = []
    image = [rho[s] for s in S.nonzero()]
    if len(set(image)) != len(image):
        errors.append("rho is not injective")
    if set(image) != set(T.nonzero()):
        errors.append("rho is not onto the crossed system")
    for a in S.elements:
        for b in S.elements:
            if rho[S.mul(a, b)] != T.mul(rho[a], rho[b]):
                errors.append(f"rho not multiplicative at {a!r},{b!r}")
    for s in S.nonzero():
        if rho[S.inv(s)] != T.inv(rho[s]):
            errors.append(f"rho incompatible with inverses at {s!r}")
        if sigma_t[rho[s]] != sigma[s]:
            errors.append(f"coordinates disagree at {s!r}")
    return {
        "ok": not errors,
        "errors": errors,
        "size": len(S.elements),
        "crossed_size": len(T.elements),
        "action_report": action.validate(),
    }


# ---------------------------------------------------------------------------
# bundled examples


def trivial_action() -> SemilatticePartialAction:
    lat = FiniteSemilattice.from_meet(["e"], lambda a, b: "e")
    act = SemilatticePartialAction(lat, trivial_group(), {0: {"e": "e"}},
                                   name="trivial")
    act.validate()
    return act


def swap_action() -> SemilatticePartialAction:
    """Z/2 swapping two disjoint elements below a fixed top.

    The top is NOT in the domain of the swap, so the crossed system has
    exactly five nonzero elements.
    """
    lat = atoms_semilattice(2)  # top, a1, a2
    theta = {
        0: {e: e for e in lat.nonzero()},
        1: {"a1": "a2", "a2": "a1"},
    }
    act = SemilatticePartialAction(lat, cyclic_group(2), theta, name="swap")
    act.validate()
    return act


def z4_double_action() -> SemilatticePartialAction:
    """Z/4 acting through its quotient Z/2 by swapping two disjoint atoms
    (no top); every theta_g is everywhere defined."""
    lat = atoms_semilattice(2, with_top=False)
    swap = {"a1": "a2", "a2": "a1"}
    ident = {"a1": "a1", "a2": "a2"}
    theta = {g: (swap if g % 2 else dict(ident)) for g in range(4)}
    act = SemilatticePartialAction(lat, cyclic_group(4), theta, name="Z4-double")
    act.validate()
    return act


def s3_atoms_action() -> SemilatticePartialAction:
    """S3 permuting three disjoint atoms under a fixed top."""
    lat = atoms_semilattice(3)
    G = symmetric_group_3()
    theta = {}
    for p in G.elements:
        m = {"top": "top"}
        for i in range(3):
            m[f"a{i + 1}"] = f"a{p[i] + 1}"
        theta[p] = m
    act = SemilatticePartialAction(lat, G, theta, name="S3-atoms")
    act.validate()
    return act


def bicyclic_window_action(window: int = 6) -> SemilatticePartialAction:
    """Shift action g: (m+N) -> (m+g)+N restricted to 0 <= m <= window.

    The true action of Z on these ideals is everywhere defined for g >= 0;
    the finite window truncates it, and every truncated pair is recorded in
    ``escapes`` so validation reports skips instead of failures.
    """
    lat = chain_semilattice(window + 1, prefix="e")
    G = WindowedIntGroup(window)
    theta = {}
    escapes = set()
    for g in G.elements:
        m = {}
        for i in range(window + 1):
            j = i + g
            if 0 <= j <= window:
                m[f"e{i}"] = f"e{j}"
            elif j > window:
                escapes.add((g, f"e{i}"))
        theta[g] = m
    act = SemilatticePartialAction(lat, G, theta, windowed=True,
                                   escapes=frozenset(escapes),
                                   name=f"bicyclic-window-{window}")
    act.validate()
    return act


def trivial_system():
    """The two-element inverse semigroup {0, e} with trivial coordinate."""
    els = ("0", "e")
    table = {(a, b): ("e" if a == b == "e" else "0") for a in els for b in els}
    S = FiniteInverseSemigroup(els, table, zero="0", name="trivial")
    return S, {"e": 0}, trivial_group()


def swap_system():
    """Crossed system of the swap action: five nonzero elements."""
    S, sigma = crossed_system(swap_action())
    return S, sigma, cyclic_group(2)


def z4_system():
    """Crossed system of the Z/4-through-Z/2 action: eight nonzero elements."""
    S, sigma = crossed_system(z4_double_action())
    return S, sigma, cyclic_group(4)


def s3_system():
    S, sigma = crossed_system(s3_atoms_action())
    return S, sigma, symmetric_group_3()


ROUNDTRIP_EXAMPLES = {
    "trivial": trivial_system,
    "swap": swap_system,
    "z4": z4_system,
    "s3": s3_system,
}

ACTION_EXAMPLES = {
    "trivial": trivial_action,
    "swap": swap_action,
    "z4": z4_double_action,
    "s3": s3_atoms_action,
    "bicyclic-window": bicyclic_window_action,
}
