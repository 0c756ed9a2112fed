"""Independent oracles for the test suite.

Everything here recomputes facts by a route DIFFERENT from the package
implementation, so that frozen expectations in the tests are corroborated
rather than copied:

- congruence closure on bounded words (vs. rewriting to normal forms);
- literal partial-bijection monoids on finite universes (vs. the symbolic
  hull with constraint sets);
- a rational 2x2 matrix representation of the Baumslag-Solitar groups
  (vs. the dedicated normal-form context);
- dense matrix arithmetic over exact scalars (vs. the sparse combo
  arithmetic of the verification lab);
- bitmask subset enumeration (vs. the tiling module's combination walk);
- element-order histograms of finite abelian groups (vs. the invariant
  factor normalization).
"""

from fractions import Fraction
from itertools import product


# ---------------------------------------------------------------------------
# congruence closure on bounded words


def congruence_classes(relations, alphabet, max_len, cutoff=None):
    """Equivalence classes of words of length <= max_len under the monoid
    congruence generated by ``relations``, explored through intermediate
    words of length <= cutoff (default max_len + the longest relator side).

    One-sided by construction: words in one class ARE equal in the monoid;
    words in different classes might still be equal via longer detours, so
    callers pick systems and cutoffs where the closure stabilizes.
    """
    if cutoff is None:
        cutoff = max_len + max((len(s) for pair in relations for s in pair),
                               default=0)
    words = [""]
    frontier = [""]
    while frontier:
        nxt = []
        for w in frontier:
            for c in alphabet:
                u = w + c
                if len(u) <= cutoff:
                    nxt.append(u)
        words.extend(nxt)
        frontier = nxt
    parent = {w: w for w in words}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    changed = True
    wordset = set(words)
    while changed:
        changed = False
        for w in words:
            for lhs, rhs in relations:
                for a, b in ((lhs, rhs), (rhs, lhs)):
                    start = 0
                    while True:
                        i = w.find(a, start)
                        if i < 0:
                            break
                        u = w[:i] + b + w[i + len(a):]
                        start = i + 1
                        if u in wordset and find(u) != find(w):
                            union(u, w)
                            changed = True
    classes = {}
    for w in words:
        if len(w) <= max_len:
            classes.setdefault(find(w), set()).add(w)
    return list(classes.values())


def same_class(classes, u, v):
    for cls in classes:
        if u in cls:
            return v in cls
    raise KeyError(u)


# ---------------------------------------------------------------------------
# literal partial-bijection monoids


def compose_maps(f, g):
    """f after g, as dicts."""
    return {x: f[y] for x, y in g.items() if y in f}


def invert_map(f):
    return {y: x for x, y in f.items()}


def census(moves, depth, core):
    """All composites of <= depth moves, deduplicated by their graph
    restricted to the core.  Returns the list of restricted graphs.

    ``moves`` are dicts on a universe with margin; ``core`` is a predicate
    keeping the region where truncation cannot distort equality.
    """
    def key(f):
        return frozenset((x, y) for x, y in f.items() if core(x) and core(y))

    ident = moves[0].keys()
    ident = {x: x for x in ident}
    seen = {key(ident): ident}
    frontier = [ident]
    for _ in range(depth):
        fresh = []
        for f in frontier:
            for mv in moves:
                u = compose_maps(mv, f)
                k = key(u)
                if k not in seen:
                    seen[k] = u
                    fresh.append(u)
        frontier = fresh
    return list(seen.values())


def shift_moves(generators, word_len, universe):
    """Multiply/divide moves of an additive submonoid of N^d, as literal
    maps on ``universe`` (a set of ints or int tuples)."""
    def add(x, s):
        if isinstance(x, int):
            return x + s
        return tuple(a + b for a, b in zip(x, s))

    shifts = []
    level = [None]
    for _ in range(word_len):
        level = [(g if s is None else add(s, g))
                 for s in level for g in generators]
        shifts.extend(level)
    moves = []
    for s in shifts:
        fwd = {x: add(x, s) for x in universe if add(x, s) in universe}
        moves.append(fwd)
        moves.append(invert_map(fwd))
    return moves


def free_moves(letters, word_len, max_len):
    """Multiply/divide moves of the free monoid, as maps on words of
    length <= max_len."""
    universe = [""]
    frontier = [""]
    for _ in range(max_len):
        frontier = [w + c for w in frontier for c in letters]
        universe.extend(frontier)
    prefixes = []
    level = [""]
    for _ in range(word_len):
        level = [w + c for w in level for c in letters]
        prefixes.extend(level)
    moves = []
    for p in prefixes:
        fwd = {x: p + x for x in universe if len(p + x) <= max_len}
        moves.append(fwd)
        moves.append(invert_map(fwd))
    return moves


def idempotent_domains(graphs):
    """Domains of the identity-restriction elements in a census result."""
    out = []
    for f in graphs:
        if all(x == y for x, y in f.items()):
            out.append(frozenset(f))
    return out


# ---------------------------------------------------------------------------
# Baumslag-Solitar matrix representation


def bs_matrices(k, l):
    """Generator matrices of <a, b | a b^k a^-1 = b^l> over the rationals.

    b is the unit upper-triangular shear and a the diagonal scaling l/k;
    the defining relation holds for every nonzero pair, so equal group
    words always give equal matrices (consistency, not faithfulness).
    """
    b = ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(1)))
    a = ((Fraction(l, k), Fraction(0)), (Fraction(0), Fraction(1)))
    return a, b


def mat_mul(m, n):
    return tuple(tuple(sum(m[i][t] * n[t][j] for t in range(2))
                       for j in range(2)) for i in range(2))


def mat_inv(m):
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return ((m[1][1] / det, -m[0][1] / det),
            (-m[1][0] / det, m[0][0] / det))


MAT_ID = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def bs_word_matrix(word, k, l):
    """Evaluate a list of (letter, exponent-sign) pairs, letters 'a'/'b'."""
    a, b = bs_matrices(k, l)
    table = {("a", 1): a, ("b", 1): b,
             ("a", -1): mat_inv(a), ("b", -1): mat_inv(b)}
    out = MAT_ID
    for item in word:
        out = mat_mul(out, table[item])
    return out


# ---------------------------------------------------------------------------
# free-group reduction by stack


def stack_reduce(word):
    """Free reduction of a list of (letter, sign) pairs."""
    out = []
    for letter, sign in word:
        if out and out[-1] == (letter, -sign):
            out.pop()
        else:
            out.append((letter, sign))
    return tuple(out)


# ---------------------------------------------------------------------------
# dense matrix route for the nilpotent comparison part


def linear_map_matrix(basis, apply_map):
    """Column-per-basis-vector integer matrix of a linear map given by
    ``apply_map(key) -> {key: coefficient}`` (coefficients exact scalars
    or ints; missing keys mean zero)."""
    index = {k: i for i, k in enumerate(basis)}
    n = len(basis)
    cols = []
    for k in basis:
        col = [0] * n
        for kk, coeff in apply_map(k).items():
            col[index[kk]] = coeff
        cols.append(col)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def dense_mul(m, n):
    size = len(m)
    return [[sum(m[i][t] * n[t][j] for t in range(size))
             for j in range(size)] for i in range(size)]


def dense_add(m, n):
    return [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(m, n)]


def dense_identity(size, one=1):
    return [[one if i == j else one * 0 for j in range(size)]
            for i in range(size)]


def is_zero_matrix(m):
    return all(all(not v for v in row) for row in m)


def nilpotency_power(m, cap=16):
    """Least p with m^p = 0, or None below the cap."""
    power = dense_identity(len(m), one=_one_like(m))
    for p in range(1, cap + 1):
        power = dense_mul(power, m)
        if is_zero_matrix(power):
            return p
    return None


def _one_like(m):
    for row in m:
        for v in row:
            if v:
                return v / v if isinstance(v, Fraction) else type(v)(1) \
                    if not isinstance(v, int) else 1
    return 1


def geometric_inverse_check(rho, chain_len):
    """(I + rho) * sum_{p < chain_len} (-1)^p rho^p == I, densely."""
    size = len(rho)
    ident = dense_identity(size)
    total = dense_identity(size)
    power = dense_identity(size)
    sign = 1
    for p in range(1, chain_len):
        power = dense_mul(power, rho)
        sign = -sign
        total = dense_add(total, [[sign * v for v in row] for row in power])
    lhs = dense_mul(dense_add(ident, rho), total)
    return lhs == ident


# ---------------------------------------------------------------------------
# bitmask patch classes


def patch_classes_bitmask(points):
    """Translation classes of nonempty subsets, via bitmask enumeration."""
    pts = [p if isinstance(p, tuple) else (p,) for p in points]
    classes = set()
    for mask in range(1, 1 << len(pts)):
        sub = [pts[i] for i in range(len(pts)) if mask >> i & 1]
        base = min(sub)
        classes.add(frozenset(tuple(a - b for a, b in zip(p, base))
                              for p in sub))
    return classes


# ---------------------------------------------------------------------------
# finite abelian group invariants


def order_histogram(torsion):
    """Element-order counts of the direct sum of Z/d for d in torsion.

    Isomorphism-invariant, so it distinguishes any two non-isomorphic
    candidate normal forms without computing invariant factors.
    """
    hist = {}
    for combo in product(*(range(d) for d in torsion)):
        order = 1
        for x, d in zip(combo, torsion):
            if x:
                g = _gcd(x, d)
                order = _lcm(order, d // g)
        hist[order] = hist.get(order, 0) + 1
    return hist


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _lcm(a, b):
    return a * b // _gcd(a, b)
