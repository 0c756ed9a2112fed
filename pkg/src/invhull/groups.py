"""Group contexts: canonical forms in the enveloping group of a presentation.

A context provides hashable canonical forms, multiplication, inversion, and -
where theory permits - an exact decision procedure for membership in the
positive cone (the image of the presented monoid).  Four flavours:

* ``FreeGroupContext`` - free reduction; everything exact.
* ``AbelianContext`` - exponent vectors modulo a relation lattice of rank <= 1
  (every bundled preset's lattice has rank <= 1); everything exact.
* ``BaumslagSolitarContext`` - HNN syllable normal forms for the groups with a
  single relation a b^k a^-1 = b^l; canonical forms and cone membership are
  exact in all four sign cases.
* ``RewriteGroupContext`` - bounded Knuth-Bendix on the doubled alphabet.
  Exact only when completion verified confluence; otherwise equality tests and
  cone membership degrade honestly to Unknown.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from . import verdicts
from .rewrite import RewritingSystem, knuth_bendix, normal_form
from .words import Alphabet, free_reduce


class GroupContext:
    """Abstract interface; elements are opaque hashable canonical forms."""

    exact: bool = True

    def canon(self, group_word: str) -> Any:
        raise NotImplementedError

    def embed(self, monoid_word: str) -> Any:
        """Image of a positive word (internal monoid string) in the group."""
        return self.canon(monoid_word)

    def mul(self, x, y) -> Any:
        raise NotImplementedError

    def inv(self, x) -> Any:
        raise NotImplementedError

    def identity(self) -> Any:
        raise NotImplementedError

    def is_identity(self, x) -> bool:
        return x == self.identity()

    def eq(self, x, y) -> bool | None:
        """True/False when decidable; None when only 'not provably equal'."""
        if x == y:
            return True
        return False if self.exact else None

    def in_positive(self, x, depth: int = 8) -> verdicts.Membership:
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError


# ---------------------------------------------------------------------------


@dataclass
class FreeGroupContext(GroupContext):
    alphabet: Alphabet
    exact: bool = True

    def canon(self, group_word: str) -> str:
        return free_reduce(group_word, self.alphabet)

    def mul(self, x: str, y: str) -> str:
        return free_reduce(x + y, self.alphabet)

    def inv(self, x: str) -> str:
        return self.alphabet.invert_word(x)

    def identity(self) -> str:
        return ""

    def in_positive(self, x: str, depth: int = 8) -> verdicts.Membership:
        if all(not self.alphabet.letter_of_char(c)[1] for c in x):
            return verdicts.in_p(x)
        return verdicts.not_in_p(note="reduced form contains an inverse letter")

    def format(self, x: str) -> str:
        return self.alphabet.format(x)

    def positive_word(self, x: str) -> str | None:
        m = self.in_positive(x)
        return m.witness if m.kind == "InP" else None


# ---------------------------------------------------------------------------


def exponent_vector(group_word: str, alphabet: Alphabet) -> tuple[int, ...]:
    counts = [0] * len(alphabet)
    for ch in group_word:
        name, inverse = alphabet.letter_of_char(ch)
        counts[alphabet.index(name)] += -1 if inverse else 1
    return tuple(counts)


def _primitive(vec: tuple[int, ...]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = math.gcd(g, abs(v))
    if g == 0:
        return vec
    vec = tuple(v // g for v in vec)
    pivot = next(v for v in vec if v)
    return vec if pivot > 0 else tuple(-v for v in vec)


@dataclass
class AbelianContext(GroupContext):
    """Z^n modulo the lattice spanned by relation difference vectors.

    Only lattices of rank <= 1 are supported exactly; that covers free abelian
    monoids and numerical-semigroup style presentations (single homogeneous
    relation after removing commutators).
    """

    alphabet: Alphabet
    relation_vectors: tuple[tuple[int, ...], ...] = ()
    exact: bool = True
    _lattice: tuple[int, ...] | None = field(default=None, init=False)

    def __post_init__(self):
        n = len(self.alphabet)
        vecs = [v for v in (_primitive(tuple(v)) for v in self.relation_vectors) if any(v)]
        uniq = sorted(set(vecs))
        if len(uniq) > 1:
            raise ValueError(
                "abelian context supports at most one independent relation vector; "
                f"got {uniq}"
            )
        self._lattice = uniq[0] if uniq else None
        if self._lattice is not None and len(self._lattice) != n:
            raise ValueError("relation vector length does not match alphabet")

    @property
    def lattice(self) -> tuple[int, ...] | None:
        """The primitive relation vector, or None for a free abelian group."""
        return self._lattice

    def _vec(self, group_word: str) -> tuple[int, ...]:
        return exponent_vector(group_word, self.alphabet)

    def canon(self, group_word: str):
        return self.reduce_vec(self._vec(group_word))

    def reduce_vec(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        v = self._lattice
        if v is None:
            return vec
        pivot = next(i for i, c in enumerate(v) if c)
        t = vec[pivot] // v[pivot]
        return tuple(x - t * c for x, c in zip(vec, v))

    def mul(self, x, y):
        return self.reduce_vec(tuple(a + b for a, b in zip(x, y)))

    def inv(self, x):
        return self.reduce_vec(tuple(-a for a in x))

    def identity(self):
        return (0,) * len(self.alphabet)

    def _word_of_vec(self, vec) -> str:
        return "".join(self.alphabet.char(n) * k for n, k in zip(self.alphabet.names, vec))

    def in_positive(self, x, depth: int = 8) -> verdicts.Membership:
        v = self._lattice
        if v is None:
            if all(c >= 0 for c in x):
                return verdicts.in_p(self._word_of_vec(x))
            return verdicts.not_in_p(note="negative exponent; no relations available")
        lo, hi = None, None  # admissible integer shifts t with x + t*v >= 0
        for xi, vi in zip(x, v):
            if vi > 0:
                need = -(xi // vi)  # integer ceil(-xi/vi)
                lo = need if lo is None else max(lo, need)
            elif vi < 0:
                allow = xi // (-vi)  # integer floor(xi/(-vi))
                hi = allow if hi is None else min(hi, allow)
            elif xi < 0:
                return verdicts.not_in_p(note="negative exponent outside the relation support")
        if lo is None:
            lo = hi if hi is not None else 0
        if hi is not None and lo > hi:
            return verdicts.not_in_p(note="no nonnegative representative in the coset")
        t = lo
        witness = tuple(xi + t * vi for xi, vi in zip(x, v))
        return verdicts.in_p(self._word_of_vec(witness))

    def format(self, x) -> str:
        if not any(x):
            return "1"
        parts = []
        for name, k in zip(self.alphabet.names, x):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return " ".join(parts)


# ---------------------------------------------------------------------------


@dataclass
class BaumslagSolitarContext(GroupContext):
    """The group <a, b | a b^k a^-1 = b^l> in syllable normal form.

    Internally the relation is stored as a b^kappa a^-1 = b^(sign*lam) with
    kappa = |k|, lam = |l| and sign = +1 iff k*l > 0 (the four presentations
    with (k, l) sign patterns collapse to these two genuinely different
    groups, with the positive cone differing per original signs).

    Canonical form: ``(m0, ((e1, m1), ..., (en, mn)))`` meaning
    b^m0 a^e1 b^m1 ... a^en b^mn with each m_i (i >= 1) the canonical coset
    representative (in [0, kappa) after a, in [0, lam) after a^-1) and no
    pinches; uniqueness is the HNN normal form theorem.
    """

    alphabet: Alphabet  # exactly (a, b) in this order
    k: int
    l: int
    exact: bool = True

    def __post_init__(self):
        if len(self.alphabet) != 2:
            raise ValueError("Baumslag-Solitar context needs exactly two generators")
        if self.k == 0 or self.l == 0:
            raise ValueError("k and l must be nonzero")
        self.kappa = abs(self.k)
        self.lam = abs(self.l)
        self.sign = 1 if self.k * self.l > 0 else -1
        self._a = self.alphabet.char(self.alphabet.names[0])
        self._b = self.alphabet.char(self.alphabet.names[1])
        self._A = self.alphabet.invert_char(self._a)
        self._B = self.alphabet.invert_char(self._b)

    # -- syllable plumbing ----------------------------------------------

    def _syllables(self, group_word: str):
        m0 = 0
        syls: list[list[int]] = []  # [eps, m] pairs
        for ch in group_word:
            if ch == self._b or ch == self._B:
                d = 1 if ch == self._b else -1
                if syls:
                    syls[-1][1] += d
                else:
                    m0 += d
            elif ch == self._a or ch == self._A:
                syls.append([1 if ch == self._a else -1, 0])
            else:
                raise ValueError(f"unexpected character {ch!r}")
        return m0, syls

    def _normalize(self, m0: int, syls: list[list[int]]):
        while True:
            # right-to-left coset normalization: a absorbs multiples of
            # b^kappa from its right (emitting b^(sign*lam*q) to its left),
            # a^-1 absorbs multiples of b^(sign*lam) (emitting b^(kappa*t)).
            for i in range(len(syls) - 1, -1, -1):
                eps, m = syls[i]
                if eps == 1:
                    q, r = divmod(m, self.kappa)
                    if q:
                        syls[i][1] = r
                        emit = self.sign * self.lam * q
                        if i == 0:
                            m0 += emit
                        else:
                            syls[i - 1][1] += emit
                else:
                    r = m % self.lam
                    if m != r:
                        syls[i][1] = r
                        emit = self.kappa * self.sign * ((m - r) // self.lam)
                        if i == 0:
                            m0 += emit
                        else:
                            syls[i - 1][1] += emit
            # cancellations: adjacent a^e b^0 a^-e collapses
            cancelled = False
            for i in range(len(syls) - 1):
                if syls[i][1] == 0 and syls[i][0] == -syls[i + 1][0]:
                    tail = syls[i + 1][1]
                    del syls[i:i + 2]
                    if i == 0:
                        m0 += tail
                    else:
                        syls[i - 1][1] += tail
                    cancelled = True
                    break
            if not cancelled:
                return m0, syls

    def canon(self, group_word: str):
        m0, syls = self._normalize(*self._syllables(group_word))
        return (m0, tuple((e, m) for e, m in syls))

    def _word_of(self, x) -> str:
        m0, syls = x

        def bpow(m):
            return (self._b if m >= 0 else self._B) * abs(m)

        out = [bpow(m0)]
        for e, m in syls:
            out.append(self._a if e == 1 else self._A)
            out.append(bpow(m))
        return "".join(out)

    def mul(self, x, y):
        return self.canon(self._word_of(x) + self._word_of(y))

    def inv(self, x):
        return self.canon(self.alphabet.invert_word(self._word_of(x)))

    def identity(self):
        return (0, ())

    def in_positive(self, x, depth: int = 8) -> verdicts.Membership:
        m0, syls = x
        if any(e != 1 for e, _ in syls):
            return verdicts.not_in_p(note="normal form contains a^-1")
        if self.sign > 0:
            # positive words normalize to positive normal forms and back
            if m0 >= 0:
                return verdicts.in_p(self._word_of(x))
            return verdicts.not_in_p(note="normal form has a negative leading b power")
        # sign < 0: with at least one a, b^lam a b^kappa = a absorbs any
        # leading negative power; with none, the element lives in <b>.
        if not syls:
            if m0 >= 0:
                return verdicts.in_p(self._word_of(x))
            return verdicts.not_in_p(note="negative power of b")
        t = max(0, -(m0 // self.lam))  # integer ceil(-m0/lam)
        lifted = (m0 + self.lam * t, tuple(
            (e, m + (self.kappa * t if i == 0 else 0)) for i, (e, m) in enumerate(syls)
        ))
        word = self._word_of(lifted)
        assert self.canon(word) == x
        return verdicts.in_p(word)

    def format(self, x) -> str:
        return self.alphabet.format(self._word_of(x))


# ---------------------------------------------------------------------------


@dataclass
class RewriteGroupContext(GroupContext):
    """Generic context: bounded Knuth-Bendix on the doubled alphabet.

    ``canon`` is a true canonical form only when completion verified
    confluence; the ``exact`` flag records that, and equality/cone queries
    degrade to Unknown instead of guessing.
    """

    alphabet: Alphabet
    relations: tuple[tuple[str, str], ...]
    max_rules: int = 120
    abelian_obstruction: AbelianContext | None = None
    system: RewritingSystem = field(init=False)

    def __post_init__(self):
        eqs = list(self.relations)
        for name in self.alphabet.names:
            g = self.alphabet.char(name)
            gi = self.alphabet.invert_char(g)
            eqs.append((g + gi, ""))
            eqs.append((gi + g, ""))
        self.system = knuth_bendix(
            eqs, self.alphabet, precedence=self.alphabet.group_chars(),
            max_rules=self.max_rules,
        )
        self.exact = self.system.confluent
        # exponent-sum obstruction: usable whenever the relation lattice has
        # rank <= 1 (commutator-type relations contribute the zero vector)
        if self.abelian_obstruction is None:
            try:
                vecs = [
                    tuple(a - b for a, b in zip(exponent_vector(u, self.alphabet),
                                                exponent_vector(v, self.alphabet)))
                    for u, v in self.relations
                ]
                self.abelian_obstruction = AbelianContext(
                    self.alphabet, relation_vectors=tuple(vecs)
                )
            except ValueError:
                self.abelian_obstruction = None

    def canon(self, group_word: str) -> str:
        return self.system.reduce(group_word)

    def mul(self, x: str, y: str) -> str:
        return self.canon(x + y)

    def inv(self, x: str) -> str:
        return self.canon(self.alphabet.invert_word(x))

    def identity(self) -> str:
        return ""

    def in_positive(self, x: str, depth: int = 8) -> verdicts.Membership:
        if all(not self.alphabet.letter_of_char(c)[1] for c in x):
            return verdicts.in_p(x)
        if self.abelian_obstruction is not None:
            ab = self.abelian_obstruction
            if ab.in_positive(ab.canon(x)).kind == "NotInP":
                return verdicts.not_in_p(note="exponent-sum obstruction")
        # bounded search for a positive word equal to x
        target = self.canon(x)
        chars = self.alphabet.monoid_chars()
        frontier = [""]
        seen = {self.canon("")}
        for _ in range(depth):
            nxt = []
            for w in frontier:
                for c in chars:
                    wc = w + c
                    n = self.canon(wc)
                    if n == target:
                        return verdicts.in_p(wc)
                    if n not in seen:
                        seen.add(n)
                        nxt.append(wc)
            frontier = nxt
        if self.exact:
            # canonical forms decide equality: x is equal to no positive word
            # of length <= depth; without a cone bound we still cannot close
            # the complement, so stay honest.
            return verdicts.unknown(depth, "no positive word up to the bound equals the element")
        return verdicts.unknown(depth, "rewriting system not verified confluent")

    def format(self, x: str) -> str:
        return self.alphabet.format(x)
