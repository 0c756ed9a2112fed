"""Orbit charts for partial semilattice actions of finite groups.

A partial action moves the nonzero semilattice elements around in orbits.
For each orbit this module builds a chart: the set of group elements that
can see the chosen representative, its stabilizer, canonical coset
representatives, and a three-coordinate description of the product set
``orbit x group``:

    (moved point, position)  <->  (mover coset, shifted coset, stabilizer part)

given by ``(gamma.d, zeta) -> ([gamma], [zeta gamma],
r[zeta gamma]^-1 zeta r[gamma])`` where ``r`` picks the canonical
representative of a coset.  Left translation on the position coordinate
does not commute with this chart on the nose; it does after conjugating
by a corrector permutation per group element, and these correctors
satisfy the translation cocycle identity.  Everything is verified
exhaustively: the chart is a bijection independent of the chosen mover,
it turns the matrix-unit algebra of the orbit block into a triple of
matrix-unit legs multiplicatively, the conjugation identity holds for
every group element, and the cocycle identity holds for every pair.
"""

from __future__ import annotations

from .paction import (SemilatticePartialAction, s3_atoms_action, swap_action,
                      trivial_action, z4_double_action)


class OrbitError(ValueError):
    """An orbit chart could not be built or failed a check."""


def orbit_partition(action: SemilatticePartialAction) -> tuple:
    """Orbits of the nonzero elements, each a tuple in lattice order.

    Orbits of a partial group action are one-step sets: whenever a point
    is reachable through several moves it is also reachable through a
    single one.  This is asserted while collecting the orbits.
    """
    lat = action.lattice
    group = action.group
    remaining = list(lat.nonzero())
    orbits = []
    while remaining:
        d = remaining[0]
        reach = {d}
        frontier = [d]
        while frontier:
            e = frontier.pop()
            for g in group.elements:
                if action.defined(g, e) and e != lat.zero:
                    img = action.act(g, e)
                    if img not in reach:
                        reach.add(img)
                        frontier.append(img)
        one_step = {action.act(g, d) for g in group.elements
                    if action.defined(g, d)}
        if one_step != reach:
            raise OrbitError(
                f"orbit of {d!r} is not a one-step set: reachable "
                f"{sorted(reach)} but single moves give {sorted(one_step)}")
        orbit = tuple(e for e in lat.nonzero() if e in reach)
        orbits.append(orbit)
        remaining = [e for e in remaining if e not in reach]
    return tuple(orbits)


class OrbitChart:
    """Chart of one orbit: movers, stabilizer, cosets, triple coordinates."""

    def __init__(self, action: SemilatticePartialAction, rep):
        if getattr(action.group, "windowed", False):
            raise OrbitError("orbit charts need a finite group; a windowed "
                             "integer group has none of the required cosets")
        self.action = action
        self.group = action.group
        self.lattice = action.lattice
        self.rep = rep
        grp = self.group
        self.seers = tuple(g for g in grp.elements
                           if action.defined(g, rep))
        self.stab = tuple(g for g in self.seers
                          if action.act(g, rep) == rep)
        self._check_stabilizer()
        self.orbit = tuple(
            e for e in self.lattice.nonzero()
            if any(action.defined(g, rep) and action.act(g, rep) == e
                   for g in self.seers))
        self.movers = {}
        for e in self.orbit:
            for g in grp.elements:
                if action.defined(g, rep) and action.act(g, rep) == e:
                    self.movers[e] = g
                    break
        self._coset_rep = {}
        for g in grp.elements:
            self._coset_rep[g] = self._first_in_coset(g)
        self.cosets = tuple(sorted({self._coset_rep[g]
                                    for g in grp.elements},
                                   key=grp.elements.index))
        self.seer_cosets = tuple(c for c in self.cosets
                                 if c in set(self._coset_rep[g]
                                             for g in self.seers))
        self.triples = tuple((a, b, m) for a in self.seer_cosets
                             for b in self.cosets for m in self.stab)

    def _check_stabilizer(self):
        grp = self.group
        stab = set(self.stab)
        if grp.identity not in stab:
            raise OrbitError("stabilizer misses the identity")
        for a in stab:
            if grp.inv(a) not in stab:
                raise OrbitError(f"stabilizer not closed under inverse "
                                 f"at {a!r}")
            for b in stab:
                if grp.mul(a, b) not in stab:
                    raise OrbitError(f"stabilizer not closed at {a!r},{b!r}")
        for g in self.seers:
            for m in stab:
                if grp.mul(g, m) not in set(self.seers):
                    raise OrbitError(
                        f"seer set is not stabilizer-invariant at {g!r}")

    def _first_in_coset(self, g):
        grp = self.group
        members = {grp.mul(g, m) for m in self.stab}
        for cand in grp.elements:
            if cand in members:
                return cand
        raise OrbitError("empty coset")  # pragma: no cover

    def coset(self, g):
        """Canonical representative of the left coset of g."""
        return self._coset_rep[g]

    # -- triple coordinates ----------------------------------------------

    def forward(self, e, zeta):
        """Chart a (point, position) pair as a coordinate triple."""
        grp = self.group
        gamma = self.movers[e]
        a = self.coset(gamma)
        b = self.coset(grp.mul(zeta, gamma))
        m = grp.mul(grp.inv(self.coset(grp.mul(zeta, gamma))),
                    grp.mul(zeta, self.coset(gamma)))
        return (a, b, m)

    def backward(self, triple):
        """Invert the chart back to a (point, position) pair."""
        grp = self.group
        a, b, m = triple
        point = self.action.act(a, self.rep)
        zeta = grp.mul(grp.mul(b, m), grp.inv(a))
        return (point, zeta)

    def points(self) -> tuple:
        return tuple((e, z) for e in self.orbit for z in self.group.elements)

    # -- the corrector permutations and their cocycle ----------------------

    def cocycle_value(self, g, b):
        """Stabilizer element measuring how translation by g twists the
        canonical representative at coset b."""
        grp = self.group
        val = grp.mul(grp.inv(self.coset(b)),
                      grp.mul(g, self.coset(grp.mul(grp.inv(g), b))))
        if val not in set(self.stab):
            raise OrbitError(f"cocycle value {val!r} left the stabilizer")
        return val

    def corrector(self, g):
        """Permutation of the triples correcting translation by g."""
        out = {}
        for t in self.triples:
            a, b, m = t
            out[t] = (a, b, self.group.mul(self.cocycle_value(g, b), m))
        return out

    def translate(self, g):
        """Translation by g on the middle coordinate only."""
        out = {}
        for t in self.triples:
            a, b, m = t
            out[t] = (a, self.coset(self.group.mul(g, b)), m)
        return out

    def moved(self, g):
        """Translation by g on positions, charted through the triples."""
        out = {}
        for t in self.triples:
            e, zeta = self.backward(t)
            out[t] = self.forward(e, self.group.mul(g, zeta))
        return out

    # -- the orbit block as matrix units ----------------------------------

    def unit_basis(self) -> tuple:
        """Matrix units of the orbit block: (point, position, position)
        symbols pairing each point with its transport."""
        out = []
        for zeta in self.group.elements:
            for eta in self.group.elements:
                g = self.group.mul(self.group.inv(eta), zeta)
                for e in self.orbit:
                    if self.action.defined(g, e):
                        out.append((e, zeta, eta))
        return tuple(out)

    def unit_to_legs(self, key):
        """Chart a matrix unit as three legs: mover pair, diagonal shifted
        coset, stabilizer pair."""
        e, zeta, eta = key
        grp = self.group
        g = grp.mul(grp.inv(eta), zeta)
        ep = self.action.act(g, e)
        gamma = self.movers[e]
        gamman = self.movers[ep]
        row = self.coset(gamma)
        col = self.coset(gamman)
        mid = self.coset(grp.mul(zeta, gamma))
        mid2 = self.coset(grp.mul(eta, gamman))
        if mid != mid2:
            raise OrbitError(f"chart of {key!r} has mismatched diagonal")
        m1 = grp.mul(grp.inv(self.coset(grp.mul(zeta, gamma))),
                     grp.mul(zeta, self.coset(gamma)))
        m2 = grp.mul(grp.inv(self.coset(grp.mul(zeta, gamma))),
                     grp.mul(eta, self.coset(gamman)))
        return ((row, col), mid, (m1, m2))

    def mul_units(self, k1, k2):
        e1, z1, h1 = k1
        e2, z2, h2 = k2
        if h1 != z2:
            return None
        g = self.group.mul(self.group.inv(h1), z1)
        if self.action.act(g, e1) != e2:
            return None
        gg = self.group.mul(self.group.inv(h2), z1)
        if not self.action.defined(gg, e1):
            raise OrbitError(f"product of {k1!r},{k2!r} has no home unit")
        return (e1, z1, h2)

    def star_unit_key(self, key):
        e, zeta, eta = key
        g = self.group.mul(self.group.inv(eta), zeta)
        return (self.action.act(g, e), eta, zeta)


def chart_report(action: SemilatticePartialAction, rep) -> dict:
    """Build the chart of one orbit and verify all its identities."""
    chart = OrbitChart(action, rep)
    grp = chart.group
    errors = []

    # the chart must not depend on which mover is chosen
    for e in chart.orbit:
        candidates = [g for g in chart.seers
                      if chart.action.act(g, chart.rep) == e]
        for zeta in grp.elements:
            base = None
            for gamma in candidates:
                a = chart.coset(gamma)
                b = chart.coset(grp.mul(zeta, gamma))
                m = grp.mul(grp.inv(b), grp.mul(zeta, a))
                if base is None:
                    base = (a, b, m)
                elif base != (a, b, m):
                    errors.append(f"chart depends on the mover at "
                                  f"({e!r},{zeta!r})")

    points = chart.points()
    if len(points) != len(chart.triples):
        errors.append(f"chart size mismatch: {len(points)} points vs "
                      f"{len(chart.triples)} triples")
    seen = set()
    for e, zeta in points:
        t = chart.forward(e, zeta)
        if t not in set(chart.triples):
            errors.append(f"chart leaves the triple set at ({e!r},{zeta!r})")
            continue
        seen.add(t)
        if chart.backward(t) != (e, zeta):
            errors.append(f"chart round trip fails at ({e!r},{zeta!r})")
    if len(seen) != len(points):
        errors.append("chart is not injective")

    # matrix-unit legs: multiplicativity and star
    basis = chart.unit_basis()
    legs = {k: chart.unit_to_legs(k) for k in basis}
    for k1 in basis:
        for k2 in basis:
            prod = chart.mul_units(k1, k2)
            (r1, c1), mid1, (m11, m12) = legs[k1]
            (r2, c2), mid2, (m21, m22) = legs[k2]
            nonzero = (c1 == r2 and mid1 == mid2 and m12 == m21)
            if (prod is not None) != nonzero:
                errors.append(f"leg product disagrees at {k1!r},{k2!r}")
            elif prod is not None:
                if legs[prod] != ((r1, c2), mid1, (m11, m22)):
                    errors.append(f"leg product value wrong at {k1!r},{k2!r}")
    for k in basis:
        (r, c), mid, (m1, m2) = legs[k]
        if legs[chart.star_unit_key(k)] != ((c, r), mid, (m2, m1)):
            errors.append(f"leg star wrong at {k!r}")

    # conjugation identity: charted position translation equals the
    # middle-coordinate translation followed by the corrector, for every
    # group element (correcting a twisted action composes, it does not
    # sandwich)
    for g in grp.elements:
        w = chart.corrector(g)
        winv = {v: k for k, v in w.items()}
        if len(winv) != len(w):
            errors.append(f"corrector for {g!r} is not a permutation")
            continue
        tr = chart.translate(g)
        lhs = chart.moved(g)
        rhs = {t: w[tr[t]] for t in chart.triples}
        if lhs != rhs:
            errors.append(f"conjugation identity fails at {g!r}")

    # cocycle identity for every pair
    for g in grp.elements:
        for h in grp.elements:
            w_gh = chart.corrector(grp.mul(g, h))
            w_g = chart.corrector(g)
            shifted = {}
            for t in chart.triples:
                a, b, m = t
                shifted[t] = (a, b, grp.mul(chart.cocycle_value(
                    h, chart.coset(grp.mul(grp.inv(g), b))), m))
            composed = {t: w_g[shifted[t]] for t in chart.triples}
            if composed != w_gh:
                errors.append(f"cocycle identity fails at ({g!r},{h!r})")
    ident = chart.corrector(grp.identity)
    if any(k != v for k, v in ident.items()):
        errors.append("identity corrector is not the identity")

    return {
        "ok": not errors,
        "errors": errors,
        "representative": str(rep),
        "orbit": [str(e) for e in chart.orbit],
        "stabilizer": [str(m) for m in chart.stab],
        "points": len(points),
        "units": len(basis),
        "pairs_checked": len(grp.elements) ** 2,
    }


def action_orbit_report(action: SemilatticePartialAction) -> dict:
    """Partition an action into orbits and verify the chart of each."""
    orbits = orbit_partition(action)
    charts = []
    for orbit in orbits:
        charts.append(chart_report(action, orbit[0]))
    return {
        "name": action.name,
        "group_size": len(action.group.elements),
        "orbits": [list(o) for o in orbits],
        "charts": charts,
        "ok": all(c["ok"] for c in charts),
    }


ORBIT_EXAMPLES = {
    "trivial": trivial_action,
    "swap": swap_action,
    "z4-double": z4_double_action,
    "s3-atoms": s3_atoms_action,
}
