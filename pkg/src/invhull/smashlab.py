"""Finite matrix-unit laboratory over a partial semilattice action.

Given a partial action of a group on a finite semilattice, a finite window
``sigma`` of group elements invariant under a finite subgroup, and finite
seed sets, this module builds for every pair ``(zeta, eta)`` of window
elements a finite sub-semilattice ``cell(zeta, eta)`` contained in the
domain of ``theta_{eta^-1 zeta}``.  The construction runs in two sweeps:

- a symmetrisation sweep: each subgroup-orbit block of pairs is handled at
  once; when ``eta^-1 zeta`` has finite order the merged seeds are closed
  under its cyclic orbit and under meets, otherwise the meet-closed seeds
  are transported to the transposed pair by the action;
- a composition sweep: the whole family is closed under meets and under
  the mixed product ``d * f = theta_{zeta^-1 eta}(theta_{eta^-1 zeta}(d) ^ f)``
  which combines ``cell(zeta, eta)`` with ``cell(eta, theta)`` into
  ``cell(zeta, theta)``.

On top of a closed family sit two finite-dimensional algebras with
distinguished bases:

- the cell algebra, spanned by symbols ``(d, zeta, eta)`` with
  ``d in cell(zeta, eta)``, multiplying by the mixed product above;
- the unit algebra, spanned by matrix units on the points ``(d, zeta)``
  whose basis pairs each ``(d, zeta)`` with its transport
  ``(eta^-1 zeta . d, eta)``.

The two are isomorphic; the isomorphism, the comparison map between them
and its decomposition into an identity-like part plus a nilpotent part,
the conjugation that trivialises the identity-like part, and the Neumann
inverse of the comparison map are all verified by exact Gaussian-rational
arithmetic on basis elements.  Nothing here is numerical: every check is
an exact identity of finitely many matrix units.
"""

from __future__ import annotations

from .paction import ActionError, ActionUndefined, SemilatticePartialAction
from .paction import (bicyclic_window_action, cyclic_group, s3_atoms_action,
                      swap_action, symmetric_group_3, trivial_group,
                      z4_double_action)
from .scalars import GaussianRational, MINUS_ONE, ONE
from .semilattice import FiniteSemilattice, chain_semilattice, diamond_semilattice


class LabError(ValueError):
    """A cell family could not be built or failed a structural check."""


class BudgetExceeded(LabError):
    """The composition sweep outgrew the configured element budget."""

    def __init__(self, units, cap):
        super().__init__(f"cell family needs more than {cap} elements "
                         f"(reached {units}); raise the cap to continue")
        self.units = units
        self.cap = cap


def element_order(group, g):
    """Order of ``g`` in the group, or None when it is infinite.

    Windowed integer groups carry no torsion, so every non-identity
    element has infinite order there.
    """
    if getattr(group, "windowed", False):
        return 1 if g == group.identity else None
    n = 1
    x = g
    bound = len(group.elements) + 1
    while x != group.identity:
        x = group.mul(x, g)
        n += 1
        if n > bound:
            raise LabError(f"order of {g!r} exceeds the group size")
    return n


class CellFamily:
    """A closed family of semilattice cells over a window of group elements."""

    def __init__(self, action, sigma, seeds, subgroup=None, cap=100000,
                 name=""):
        self.action = action
        self.group = action.group
        self.lattice = action.lattice
        self.name = name or action.name
        self.cap = cap
        self.sigma = tuple(sigma)
        if len(set(self.sigma)) != len(self.sigma) or not self.sigma:
            raise LabError("window must be a nonempty list of distinct "
                           "group elements")
        if subgroup is None:
            if getattr(self.group, "windowed", False):
                subgroup = (self.group.identity,)
            else:
                subgroup = tuple(self.group.elements)
        self.subgroup = tuple(subgroup)
        self._check_subgroup()
        self.seeds = {pair: frozenset(vals) for pair, vals in seeds.items()
                      if vals}
        self._check_seeds()
        self.first_pass = self._symmetrise()
        self.cells = self._compose()
        self._unit_basis = None
        self._unit_set = None
        self._cell_basis = None
        self._psi_tables = {}

    # -- construction -----------------------------------------------------

    def _check_subgroup(self):
        F = self.subgroup
        if self.group.identity not in F:
            raise LabError("subgroup must contain the identity")
        for a in F:
            if self.group.inv(a) not in F:
                raise LabError(f"subgroup not closed under inverse at {a!r}")
            for b in F:
                if self.group.mul(a, b) not in F:
                    raise LabError(f"subgroup not closed at {a!r}*{b!r}")
            for z in self.sigma:
                if self.group.mul(a, z) not in self.sigma:
                    raise LabError(
                        f"window is not subgroup-invariant: {a!r}*{z!r} "
                        "falls outside it")

    def _check_seeds(self):
        for (zeta, eta), vals in self.seeds.items():
            if zeta not in self.sigma or eta not in self.sigma:
                raise LabError(f"seed pair ({zeta!r},{eta!r}) outside window")
            dom = self.action.source_dom(self._g(zeta, eta))
            for x in vals:
                if x == self.lattice.zero:
                    raise LabError("seeds must be nonzero")
                if x not in dom:
                    raise LabError(
                        f"seed {x!r} for pair ({zeta!r},{eta!r}) is outside "
                        "the matching action domain")

    def _g(self, zeta, eta):
        """The group element eta^-1 zeta attached to the pair (zeta, eta)."""
        return self.group.mul(self.group.inv(eta), zeta)

    def _symmetrise(self):
        group, F = self.group, self.subgroup
        assigned = {}

        def assign(pair, value):
            if pair in assigned and assigned[pair] != value:
                raise LabError(
                    f"inconsistent symmetrisation at pair {pair!r}: the "
                    "block overlaps itself with different results")
            assigned[pair] = value

        for zeta in self.sigma:
            for eta in self.sigma:
                if (zeta, eta) in assigned:
                    continue
                g = self._g(zeta, eta)
                direct = [(group.mul(c, zeta), group.mul(c, eta)) for c in F]
                merged = set()
                for pair in direct:
                    merged |= self.seeds.get(pair, frozenset())
                    flip = (pair[1], pair[0])
                    for x in self.seeds.get(flip, frozenset()):
                        # transposed seeds live on the other side of the
                        # pair; move them over before closing
                        merged.add(self.action.act(group.mul(
                            group.inv(zeta), eta), x))
                order = element_order(group, g)
                if order is not None:
                    orbit = set()
                    for x in merged:
                        y = x
                        for _ in range(order):
                            orbit.add(y)
                            y = self.action.act(g, y)
                        if y != x:
                            raise ActionError(
                                f"orbit of {x!r} under {g!r} does not close")
                    value = frozenset(self.lattice.meet_closure(orbit))
                    flipped = value
                else:
                    value = frozenset(self.lattice.meet_closure(merged))
                    flipped = frozenset(self.action.act(g, x) for x in value)
                for pair in direct:
                    assign(pair, value)
                    assign((pair[1], pair[0]), flipped)
        return assigned

    def _compose(self):
        cells = {pair: set(vals) for pair, vals in self.first_pass.items()}
        zero = self.lattice.zero
        changed = True
        while changed:
            changed = False
            for pair in cells:
                closed = self.lattice.meet_closure(cells[pair])
                if len(closed) > len(cells[pair]):
                    cells[pair] = closed
                    changed = True
            for zeta in self.sigma:
                for eta in self.sigma:
                    left = cells[(zeta, eta)]
                    if not left:
                        continue
                    for theta in self.sigma:
                        right = cells[(eta, theta)]
                        if not right:
                            continue
                        target = cells[(zeta, theta)]
                        for d in sorted(left):
                            for f in sorted(right):
                                x = self.combine(zeta, eta, d, f)
                                if x != zero and x not in target:
                                    target.add(x)
                                    changed = True
            units = sum(len(v) for v in cells.values())
            if units > self.cap:
                raise BudgetExceeded(units, self.cap)
        return {pair: frozenset(vals) for pair, vals in cells.items()}

    # -- basic operations -------------------------------------------------

    def cell(self, zeta, eta) -> frozenset:
        return self.cells.get((zeta, eta), frozenset())

    def combine(self, zeta, eta, d, f):
        """The mixed product sending cell(zeta,eta) x cell(eta,theta)
        into cell(zeta,theta); the result may be the lattice zero."""
        g = self._g(zeta, eta)
        moved = self.action.act(g, d)
        m = self.lattice.meet(moved, f)
        if m == self.lattice.zero:
            return m
        return self.action.act(self.group.inv(g), m)

    def transport(self, zeta, eta, d):
        """Move an element of cell(zeta,eta) to its partner in cell(eta,zeta)."""
        return self.action.act(self._g(zeta, eta), d)

    def all_elements(self) -> tuple:
        seen = set()
        for vals in self.cells.values():
            seen |= vals
        return tuple(e for e in self.lattice.elements if e in seen)

    def diagonal_common(self) -> tuple:
        """Elements present in every diagonal cell."""
        common = None
        for zeta in self.sigma:
            vals = self.cell(zeta, zeta)
            common = set(vals) if common is None else (common & vals)
        common = common or set()
        return tuple(e for e in self.lattice.elements if e in common)

    def longest_chain(self) -> int:
        """Length (element count) of the longest strictly decreasing chain
        through the union of all cells."""
        elements = self.all_elements()
        depth = {}
        for e in sorted(elements, key=lambda x: len(self.lattice.down_set(x))):
            below = [depth[f] for f in elements
                     if f in depth and self.lattice.lt(f, e)]
            depth[e] = 1 + max(below, default=0)
        return max(depth.values(), default=0)

    # -- bases ------------------------------------------------------------

    def cell_basis(self) -> tuple:
        if self._cell_basis is None:
            out = []
            for zeta in self.sigma:
                for eta in self.sigma:
                    for d in sorted(self.cell(zeta, eta)):
                        out.append((d, zeta, eta))
            self._cell_basis = tuple(out)
        return self._cell_basis

    def unit_basis(self) -> tuple:
        if self._unit_basis is None:
            out = []
            for d, zeta, eta in self.cell_basis():
                out.append(((d, zeta), (self.transport(zeta, eta, d), eta)))
            self._unit_basis = tuple(out)
        return self._unit_basis

    def unit_key(self, d, zeta, eta):
        return ((d, zeta), (self.transport(zeta, eta, d), eta))

    # -- products on basis symbols ---------------------------------------

    def mul_cell_keys(self, k1, k2):
        d, z1, e1 = k1
        f, z2, e2 = k2
        if e1 != z2:
            return None
        x = self.combine(z1, e1, d, f)
        if x == self.lattice.zero:
            return None
        if x not in self.cell(z1, e2):
            raise LabError(f"cell product {k1!r}*{k2!r} escaped the family")
        return (x, z1, e2)

    def star_cell_key(self, k):
        d, zeta, eta = k
        return (self.transport(zeta, eta, d), eta, zeta)

    def mul_unit_keys(self, k1, k2):
        p1, q1 = k1
        p2, q2 = k2
        if q1 != p2:
            return None
        key = (p1, q2)
        if self._unit_set is None:
            self._unit_set = frozenset(self.unit_basis())
        if key not in self._unit_set:
            raise LabError(f"unit product {k1!r}*{k2!r} escaped the basis")
        return key

    @staticmethod
    def star_unit_key(k):
        return (k[1], k[0])

    # -- subgroup action on basis symbols ---------------------------------

    def move_cell_key(self, c, key):
        d, zeta, eta = key
        return (d, self.group.mul(c, zeta), self.group.mul(c, eta))

    def move_unit_key(self, c, key):
        (d, zeta), (dp, eta) = key
        return ((d, self.group.mul(c, zeta)), (dp, self.group.mul(c, eta)))


def build_family(action, sigma, seeds, subgroup=None, cap=100000,
                 name="") -> CellFamily:
    """Build and validate a closed cell family; raise LabError on failure."""
    family = CellFamily(action, sigma, seeds, subgroup=subgroup, cap=cap,
                        name=name)
    report = closure_report(family)
    if not report["ok"]:
        raise LabError(f"family {family.name!r} failed closure checks: "
                       + "; ".join(report["errors"][:4]))
    return family


# -- structural checks on the closed family -------------------------------

def closure_report(family: CellFamily) -> dict:
    """Exhaustive checks of the family's defining properties.

    Verified, for every pair (zeta, eta) of window elements:
    - translation: cell(c zeta, c eta) == cell(zeta, eta) for subgroup c;
    - transport: the action of eta^-1 zeta maps cell(zeta, eta) bijectively
      onto cell(eta, zeta);
    - composition: the mixed product of cell(zeta, eta) and cell(eta, theta)
      lands in cell(zeta, theta) (or vanishes);
    - meets: every cell is meet-closed, zero-free and inside the domain of
      the matching partial map;
    - seeds: the original seeds survive into the final cells.
    """
    errors = []
    act, lat, grp = family.action, family.lattice, family.group
    for (zeta, eta), vals in family.cells.items():
        dom = act.source_dom(family._g(zeta, eta))
        for d in vals:
            if d == lat.zero:
                errors.append(f"zero entered cell ({zeta!r},{eta!r})")
            if d not in dom:
                errors.append(f"cell ({zeta!r},{eta!r}) leaves its domain "
                              f"at {d!r}")
        for a in vals:
            for b in vals:
                m = lat.meet(a, b)
                if m != lat.zero and m not in vals:
                    errors.append(f"cell ({zeta!r},{eta!r}) misses meet "
                                  f"{m!r}")
        for c in family.subgroup:
            moved = family.cell(grp.mul(c, zeta), grp.mul(c, eta))
            if moved != vals:
                errors.append(f"translation by {c!r} changes cell "
                              f"({zeta!r},{eta!r})")
        image = frozenset(family.transport(zeta, eta, d) for d in vals)
        if image != family.cell(eta, zeta):
            errors.append(f"transport of cell ({zeta!r},{eta!r}) misses "
                          "its transpose")
    for pair, vals in family.seeds.items():
        if not vals <= family.cells.get(pair, frozenset()):
            errors.append(f"seeds of pair {pair!r} were lost")
    for zeta in family.sigma:
        for eta in family.sigma:
            for theta in family.sigma:
                for d in family.cell(zeta, eta):
                    for f in family.cell(eta, theta):
                        x = family.combine(zeta, eta, d, f)
                        if x != lat.zero and x not in family.cell(zeta, theta):
                            errors.append(
                                f"product of {d!r} and {f!r} escapes cell "
                                f"({zeta!r},{theta!r})")
    units = sum(len(v) for v in family.cells.values())
    return {"ok": not errors, "errors": errors, "units": units,
            "pairs": len(family.cells)}


def redundant_factor_check(family: CellFamily, max_len=4, cap=20000) -> dict:
    """Dropping a repeated factor from a chained product changes nothing.

    Chains are built from the symmetrised (first-pass) cells: a chain is a
    path of window elements with one cell element chosen per step, folded
    left-to-right through the mixed product.  Whenever a chain repeats a
    (vertex, element) factor, the fold with the later occurrence removed
    must give the same result.
    """
    first = family.first_pass
    checked = 0
    chains = 0

    def fold(start, factors):
        # each factor carries its own source vertex, so the fold needs no
        # separate cursor; this keeps dropped-factor folds well-formed
        acc = None
        for src, e in factors:
            if acc is None:
                acc = e
            else:
                acc = family.combine(start, src, acc, e)
        return acc

    def extend(start, cur, factors):
        nonlocal checked, chains
        if chains > cap:
            return
        if len(factors) >= 2:
            chains += 1
            pairs = [(i, j) for i in range(len(factors))
                     for j in range(i + 1, len(factors))
                     if factors[i] == factors[j]]
            for _, j in pairs:
                full = fold(start, factors)
                dropped = fold(start, factors[:j] + factors[j + 1:])
                if full != dropped:
                    raise LabError(
                        f"dropping repeated factor {factors[j]!r} changed "
                        f"a chain product: {full!r} != {dropped!r}")
                checked += 1
        if len(factors) == max_len:
            return
        for eta in family.sigma:
            for e in sorted(first.get((cur, eta), frozenset())):
                extend(start, eta, factors + [(cur, e)])

    for start in family.sigma:
        extend(start, start, [])
    return {"ok": True, "chains": chains, "dropped_checked": checked}


# -- exact linear algebra over the bases ----------------------------------

def _add(dst, key, coeff):
    cur = dst.get(key)
    new = coeff if cur is None else cur + coeff
    if new:
        dst[key] = new
    elif cur is not None:
        del dst[key]


def combo_scale(combo, coeff):
    out = {}
    for key, c in combo.items():
        _add(out, key, c * coeff)
    return out


def combo_add(*combos):
    out = {}
    for combo in combos:
        for key, c in combo.items():
            _add(out, key, c)
    return out


def combo_sub(a, b):
    return combo_add(a, combo_scale(b, MINUS_ONE))


def combo_mul(a, b, mul_key):
    out = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = mul_key(k1, k2)
            if k is not None:
                _add(out, k, c1 * c2)
    return out


def combo_star(combo, star_key):
    out = {}
    for k, c in combo.items():
        _add(out, star_key(k), c.conjugate())
    return out


def combo_map(combo, fn):
    """Apply a basis-key -> combo linear map to a combo."""
    out = {}
    for key, c in combo.items():
        for k2, c2 in fn(key).items():
            _add(out, k2, c * c2)
    return out


def mul_tensor_keys(k1, k2, base_mul):
    legs1, b1 = k1
    legs2, b2 = k2
    if len(legs1) != len(legs2):
        raise LabError("tensor length mismatch")
    out = []
    for (x, y), (xp, yp) in zip(legs1, legs2):
        if y != xp:
            return None
        out.append((x, yp))
    b = base_mul(b1, b2)
    if b is None:
        return None
    return (tuple(out), b)


def star_tensor_key(k, base_star):
    legs, b = k
    return (tuple((y, x) for x, y in legs), base_star(b))


# -- the distinguished maps ----------------------------------------------

def phi_map(family, unit_key):
    """Comparison map into one matrix-unit leg tensor the cell algebra."""
    (d, zeta), (dp, eta) = unit_key
    return {(((d, dp),), (d, zeta, eta)): ONE}


def iota_map(family, unit_key):
    """Identity-like part: same unit, decorated with its matrix-unit leg."""
    (d, zeta), (dp, eta) = unit_key
    return {(((d, dp),), unit_key): ONE}


def rho_map(family, unit_key):
    """Nilpotent part: the strictly smaller cell members below the unit."""
    (d, zeta), (dp, eta) = unit_key
    out = {}
    for e in sorted(family.cell(zeta, eta)):
        if family.lattice.lt(e, d):
            _add(out, (((d, dp),), family.unit_key(e, zeta, eta)), ONE)
    return out


def _psi_table(family, zeta, eta):
    """Per-cell table of complement combos d -> d minus everything below.

    The combo for d represents the cell element d with the join of all
    strictly smaller cell members removed; the recursion d - sum of the
    tables of smaller members reproduces the inclusion-exclusion of that
    join exactly.
    """
    key = (zeta, eta)
    if key not in family._psi_tables:
        table = {}
        members = sorted(family.cell(zeta, eta),
                         key=lambda x: (len(family.lattice.down_set(x)),
                                        family.lattice.elements.index(x)))
        for d in members:
            combo = {(d, zeta, eta): ONE}
            for e in members:
                if family.lattice.lt(e, d):
                    combo = combo_sub(combo, table[e])
            table[d] = combo
        family._psi_tables[key] = table
    return family._psi_tables[key]


def psi_map(family, unit_key):
    """Isomorphism from the unit algebra onto the cell algebra."""
    (d, zeta), (dp, eta) = unit_key
    return dict(_psi_table(family, zeta, eta)[d])


def psi_inv_map(family, cell_key):
    """Inverse isomorphism: a cell symbol is the sum of the units at or
    below it within its own cell."""
    d, zeta, eta = cell_key
    out = {}
    for e in sorted(family.cell(zeta, eta)):
        if family.lattice.leq(e, d):
            _add(out, family.unit_key(e, zeta, eta), ONE)
    return out


# -- verification reports -------------------------------------------------

def psi_report(family: CellFamily) -> dict:
    """The unit and cell algebras are exactly isomorphic.

    Checks, exhaustively over basis elements: the two maps invert each
    other, respect products, stars and the subgroup action.
    """
    errors = []
    units = family.unit_basis()
    cells = family.cell_basis()

    def psi(c):
        return combo_map(c, lambda k: psi_map(family, k))

    def psi_inv(c):
        return combo_map(c, lambda k: psi_inv_map(family, k))

    for u in units:
        if psi_inv(psi({u: ONE})) != {u: ONE}:
            errors.append(f"round trip failed at unit {u!r}")
    for ck in cells:
        if psi(psi_inv({ck: ONE})) != {ck: ONE}:
            errors.append(f"round trip failed at cell symbol {ck!r}")
    for u1 in units:
        for u2 in units:
            prod = family.mul_unit_keys(u1, u2)
            lhs = combo_mul(psi({u1: ONE}), psi({u2: ONE}),
                            family.mul_cell_keys)
            rhs = psi({prod: ONE}) if prod else {}
            if lhs != rhs:
                errors.append(f"not multiplicative at {u1!r},{u2!r}")
    for u in units:
        lhs = psi({family.star_unit_key(u): ONE})
        rhs = combo_star(psi({u: ONE}), family.star_cell_key)
        if lhs != rhs:
            errors.append(f"star broken at {u!r}")
    for c in family.subgroup:
        for u in units:
            lhs = psi({family.move_unit_key(c, u): ONE})
            rhs = {family.move_cell_key(c, k): v
                   for k, v in psi({u: ONE}).items()}
            if lhs != rhs:
                errors.append(f"not equivariant at {c!r},{u!r}")
    return {"ok": not errors, "errors": errors,
            "unit_dim": len(units), "cell_dim": len(cells)}


def comparison_report(family: CellFamily) -> dict:
    """The comparison map splits exactly into identity plus nilpotent part.

    Checks on the unit basis: composing the comparison map with the
    algebra isomorphism equals the identity-like part plus the nilpotent
    part; the comparison map respects products, stars and the subgroup
    action; both parts are homomorphisms and are orthogonal to each other.
    """
    errors = []
    units = family.unit_basis()

    def unit_mul(b1, b2):
        return family.mul_unit_keys(b1, b2)

    def tmul(c1, c2):
        return combo_mul(c1, c2,
                         lambda k1, k2: mul_tensor_keys(k1, k2, unit_mul))

    def tmul_cells(c1, c2):
        return combo_mul(
            c1, c2, lambda k1, k2: mul_tensor_keys(k1, k2,
                                                   family.mul_cell_keys))

    phi = {u: phi_map(family, u) for u in units}
    iota = {u: iota_map(family, u) for u in units}
    rho = {u: rho_map(family, u) for u in units}

    for u in units:
        through = {}
        for (legs, ck), c in phi[u].items():
            for uk, c2 in psi_inv_map(family, ck).items():
                _add(through, (legs, uk), c * c2)
        if through != combo_add(iota[u], rho[u]):
            errors.append(f"decomposition fails at {u!r}")
    for u1 in units:
        for u2 in units:
            prod = unit_mul(u1, u2)
            expect_phi = phi[prod] if prod else {}
            expect_iota = iota[prod] if prod else {}
            expect_rho = rho[prod] if prod else {}
            if tmul_cells(phi[u1], phi[u2]) != expect_phi:
                errors.append(f"comparison map not multiplicative at "
                              f"{u1!r},{u2!r}")
            if tmul(iota[u1], iota[u2]) != expect_iota:
                errors.append(f"identity part not multiplicative at "
                              f"{u1!r},{u2!r}")
            if tmul(rho[u1], rho[u2]) != expect_rho:
                errors.append(f"nilpotent part not multiplicative at "
                              f"{u1!r},{u2!r}")
            if tmul(iota[u1], rho[u2]) or tmul(rho[u1], iota[u2]):
                errors.append(f"parts not orthogonal at {u1!r},{u2!r}")
    for c in family.subgroup:
        for u in units:
            moved = family.move_unit_key(c, u)
            lhs = {(legs, family.move_cell_key(c, ck)): v
                   for (legs, ck), v in phi[u].items()}
            if phi[moved] != lhs:
                errors.append(f"comparison map not equivariant at {c!r}")
            for fn, tag in ((iota, "identity part"), (rho, "nilpotent part")):
                lhs = {(legs, family.move_unit_key(c, uk)): v
                       for (legs, uk), v in fn[u].items()}
                if fn[moved] != lhs:
                    errors.append(f"{tag} not equivariant at {c!r},{u!r}")
    return {"ok": not errors, "errors": errors}


def nilpotency_report(family: CellFamily) -> dict:
    """The nilpotent part dies at the longest-chain bound.

    Iterates the nilpotent part literally, growing one matrix-unit leg per
    step, and finds the first power that annihilates every basis unit.
    That power never exceeds the length of the longest strictly
    decreasing chain through the cells.
    """
    units = family.unit_basis()
    bound = max(family.longest_chain(), 1)
    current = {u: rho_map(family, u) for u in units}
    power = 1
    while any(current.values()):
        if power > bound:
            raise LabError("nilpotent part survived past the chain bound")
        nxt = {}
        for u in units:
            out = {}
            for (legs, uk), c in current[u].items():
                for (legs2, uk2), c2 in rho_map(family, uk).items():
                    _add(out, (legs + legs2, uk2), c * c2)
            nxt[u] = out
        current = nxt
        power += 1
    return {"ok": True, "min_power": power, "chain_bound": bound}


def conjugation_report(family: CellFamily, pivot=None) -> dict:
    """A self-adjoint unitary turns the identity-like part into a corner.

    Builds the swap operator from a pivot element common to all diagonal
    cells, extends it to a unitary by adding the complementary projection,
    and checks exactly: self-adjointness, squaring to one, and that
    conjugating the identity-like part yields the fixed-pivot corner of
    the identity.
    """
    if pivot is None:
        common = family.diagonal_common()
        if not common:
            raise LabError("no element lies in every diagonal cell; "
                           "seed the diagonals with a shared element")
        pivot = common[0]
    units = family.unit_basis()

    def unit_mul(b1, b2):
        return family.mul_unit_keys(b1, b2)

    def tmul(c1, c2):
        return combo_mul(c1, c2,
                         lambda k1, k2: mul_tensor_keys(k1, k2, unit_mul))

    def tstar(c):
        return combo_star(c, lambda k: star_tensor_key(
            k, family.star_unit_key))

    swap = {}
    for zeta in family.sigma:
        diag = sorted(family.cell(zeta, zeta))
        if pivot not in diag:
            raise LabError(f"pivot {pivot!r} missing from the diagonal "
                           f"cell at {zeta!r}")
        for d in diag:
            unit = family.unit_key(d, zeta, zeta)
            if d == pivot:
                _add(swap, (((pivot, pivot),), unit), ONE)
            else:
                _add(swap, (((pivot, d),), unit), ONE)
                _add(swap, (((d, pivot),), unit), ONE)

    errors = []
    if tstar(swap) != swap:
        errors.append("swap operator is not self-adjoint")
    square = tmul(swap, swap)
    if tmul(square, square) != square or tstar(square) != square:
        errors.append("swap square is not a projection")

    # unitary = 1 + (swap - square) in the unitisation; products with the
    # formal unit are handled by keeping the scalar part separate
    corr = combo_sub(swap, square)

    def conj(middle):
        # (1 + corr) middle (1 + corr)
        left = combo_add(middle, tmul(corr, middle))
        return combo_add(left, tmul(left, corr))

    if tmul(corr, corr) != combo_scale(corr, MINUS_ONE * 2):
        # (W - W^2)^2 = -2(W - W^2) is equivalent to U^2 = 1
        errors.append("extension to a unitary fails to square to one")
    if tstar(corr) != corr:
        errors.append("unitary correction is not self-adjoint")
    for u in units:
        got = conj(iota_map(family, u))
        want = {(((pivot, pivot),), u): ONE}
        if got != want:
            errors.append(f"conjugated identity part is not the pivot "
                          f"corner at {u!r}")
    return {"ok": not errors, "errors": errors, "pivot": str(pivot)}


def neumann_report(family: CellFamily) -> dict:
    """The alternating power sum inverts one-plus-nilpotent exactly.

    Compresses the nilpotent part to a rational-linear endomorphism of the
    unit algebra by forgetting the decorating leg, checks that compression
    loses nothing (the iterated legs are determined by the unit), and
    verifies that the alternating sum of its powers is a two-sided inverse
    of one plus the map, over exact rational arithmetic.
    """
    units = family.unit_basis()
    errors = []

    def hat(key):
        return {uk: c for (legs, uk), c in rho_map(family, key).items()}

    # compression must match the tensor-literal iterates term by term
    tensor = {u: rho_map(family, u) for u in units}
    flat = {u: hat(u) for u in units}
    power = 1
    guard = max(family.longest_chain(), 1) + 1
    while any(tensor.values()):
        if power > guard:
            raise LabError("nilpotent part survived past the chain bound")
        for u in units:
            collapsed = {}
            for (legs, uk), c in tensor[u].items():
                _add(collapsed, uk, c)
            if collapsed != flat[u]:
                errors.append(f"compression mismatch at power {power}, "
                              f"unit {u!r}")
        nxt_t, nxt_f = {}, {}
        for u in units:
            out_t, out_f = {}, {}
            for (legs, uk), c in tensor[u].items():
                for (legs2, uk2), c2 in rho_map(family, uk).items():
                    _add(out_t, (legs + legs2, uk2), c * c2)
            for uk, c in flat[u].items():
                for uk2, c2 in hat(uk).items():
                    _add(out_f, uk2, c * c2)
            nxt_t[u], nxt_f[u] = out_t, out_f
        tensor, flat = nxt_t, nxt_f
        power += 1

    bound = max(family.longest_chain(), 1)
    powers = [{u: {u: ONE} for u in units}]
    for _ in range(bound - 1):
        prev = powers[-1]
        powers.append({u: combo_map(prev[u], hat) for u in units})
    series = {}
    for u in units:
        total = {}
        for l, table in enumerate(powers):
            sign = ONE if l % 2 == 0 else MINUS_ONE
            for k, c in table[u].items():
                _add(total, k, c * sign)
        series[u] = total

    def one_plus(combo):
        return combo_add(combo, combo_map(combo, hat))

    for u in units:
        if one_plus(series[u]) != {u: ONE}:
            errors.append(f"series is not a right inverse at {u!r}")
        if combo_map(one_plus({u: ONE}),
                     lambda k: series[k]) != {u: ONE}:
            errors.append(f"series is not a left inverse at {u!r}")
    return {"ok": not errors, "errors": errors, "terms": bound}


def family_report(family: CellFamily, max_chain_len=4) -> dict:
    """Run every verification on a family and collect the results."""
    closure = closure_report(family)
    report = {
        "name": family.name,
        "window": [str(z) for z in family.sigma],
        "units": closure["units"],
        "closure": closure,
        "redundant": redundant_factor_check(family, max_len=max_chain_len),
        "isomorphism": psi_report(family),
        "comparison": comparison_report(family),
        "nilpotency": nilpotency_report(family),
        "conjugation": conjugation_report(family),
        "inverse": neumann_report(family),
    }
    report["ok"] = all(v["ok"] for k, v in report.items()
                       if isinstance(v, dict) and "ok" in v)
    return report


# -- bundled families -----------------------------------------------------

def chain_family(n: int) -> CellFamily:
    """Trivial group over an n-element descending chain; the nilpotent
    part of the comparison map dies exactly at power n."""
    lat = chain_semilattice(n, prefix="c")
    grp = trivial_group()
    action = SemilatticePartialAction(
        lat, grp, {grp.identity: {e: e for e in lat.nonzero()}},
        name=f"chain-{n}")
    action.validate()
    e = grp.identity
    return build_family(action, (e,), {(e, e): set(lat.nonzero())},
                        name=f"chain-{n}")


def diamond_family() -> CellFamily:
    """Trivial group over the four-element diamond; exercises genuine
    inclusion-exclusion in the algebra isomorphism."""
    lat = diamond_semilattice()
    grp = trivial_group()
    action = SemilatticePartialAction(
        lat, grp, {grp.identity: {e: e for e in lat.nonzero()}},
        name="diamond")
    action.validate()
    e = grp.identity
    return build_family(action, (e,), {(e, e): set(lat.nonzero())},
                        name="diamond")


def swap_family() -> CellFamily:
    """Order-two group swapping two atoms below a fixed top; the swap is
    undefined on the top, so off-diagonal cells hold only the atoms."""
    action = swap_action()
    seeds = {(0, 0): {"top"}, (0, 1): {"a1"}}
    return build_family(action, (0, 1), seeds, name="swap")


def z4_family() -> CellFamily:
    """Order-four group acting through its half-order quotient on two
    disjoint atoms; exercises orbits of composite order."""
    action = z4_double_action()
    seeds = {(0, 0): {"a1"}, (0, 1): {"a1"}}
    return build_family(action, (0, 1, 2, 3), seeds, name="z4")


def s3_family() -> CellFamily:
    """The full permutation group of three atoms under a fixed top, with
    the whole group as both window and symmetry subgroup."""
    action = s3_atoms_action()
    grp = action.group
    e = grp.identity
    t = (1, 0, 2)
    seeds = {(e, e): {"top"}, (e, t): {"a1"}}
    return build_family(action, tuple(grp.elements), seeds, name="s3")


def shift_window_family(window: int = 6, span: int = 2) -> CellFamily:
    """Windowed shift action of the integers on a descending chain.

    Every non-identity integer has infinite order, so the symmetrisation
    sweep takes the transport branch for every off-diagonal pair.
    """
    if span >= window:
        raise LabError("span must stay below the window")
    action = bicyclic_window_action(window)
    sigma = tuple(range(span + 1))
    seeds = {}
    for z in sigma:
        seeds[(z, z)] = {"e0"}
    for z in sigma:
        for h in sigma:
            if z < h:
                seeds[(z, h)] = {f"e{h - z}"}
    return build_family(action, sigma, seeds,
                        name=f"shift-window-{window}-span-{span}")


FAMILIES = {
    "chain-1": lambda: chain_family(1),
    "chain-2": lambda: chain_family(2),
    "chain-3": lambda: chain_family(3),
    "diamond": diamond_family,
    "swap": swap_family,
    "z4": z4_family,
    "s3": s3_family,
    "shift-window": shift_window_family,
}
