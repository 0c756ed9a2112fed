"""String rewriting systems and bounded Knuth-Bendix completion.

Rules are oriented by the shortlex (length, then lexicographic) order induced
by the alphabet's generator listing, so every rule application strictly
decreases the order and reduction always terminates; the step budget exists
only to bound pathological rule sets supplied by hand.

The reduction strategy (leftmost match, first rule on ties) is deterministic,
so non-confluent systems still give reproducible - merely non-canonical -
normal forms.  ``RewritingSystem.status`` records whether confluence was
actually verified (all critical pairs resolve) or the completion budget ran
out first.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

from .words import Alphabet, shortlex_key

# Kernel selection: compiled if available, pure Python otherwise.  INVHULL_PURE=1
# forces the fallback (used by the benchmark and by the test suite to pin both
# implementations against each other).
if os.environ.get("INVHULL_PURE"):
    from . import _kernel_py as _kernel

    KERNEL = "python"
else:
    try:
        from . import _kernel  # type: ignore

        KERNEL = "compiled"
    except ImportError:
        from . import _kernel_py as _kernel

        KERNEL = "python"

DEFAULT_MAX_STEPS = 200_000

CONFLUENT = "verified-confluent"
BOUNDED = "bounded"


class NonTerminating(RuntimeError):
    """Reduction step budget exhausted; ``partial`` holds the last word."""

    def __init__(self, partial: str, steps: int):
        super().__init__(f"reduction did not finish within {steps} steps")
        self.partial = partial
        self.steps = steps


@dataclass(frozen=True)
class RewritingSystem:
    alphabet: Alphabet
    rules: tuple[tuple[str, str], ...]
    precedence: str
    status: str = BOUNDED
    stats: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for lhs, rhs in self.rules:
            if not lhs:
                raise ValueError("empty left-hand side")
            if not shortlex_key(rhs, self.precedence) < shortlex_key(lhs, self.precedence):
                raise ValueError(
                    f"rule {lhs!r} -> {rhs!r} does not decrease the shortlex order"
                )

    @property
    def confluent(self) -> bool:
        return self.status == CONFLUENT

    def reduce(self, word: str, max_steps: int = DEFAULT_MAX_STEPS) -> str:
        lhss = [l for l, _ in self.rules]
        rhss = [r for _, r in self.rules]
        out, steps = _kernel.reduce_word(word, lhss, rhss, max_steps)
        if steps < 0:
            raise NonTerminating(out, max_steps)
        return out

    def pretty_rules(self) -> list[str]:
        fmt = self.alphabet.format
        return [f"{fmt(l)} -> {fmt(r)}" for l, r in self.rules]


def normal_form(word: str, system: RewritingSystem, max_steps: int = DEFAULT_MAX_STEPS) -> str:
    """Reduce ``word`` to its normal form under ``system``.

    For a verified-confluent system this is the canonical representative of
    the word's congruence class; otherwise it is only a deterministic
    reduced form.
    """
    return system.reduce(word, max_steps)


def _orient(u: str, v: str, precedence: str):
    ku, kv = shortlex_key(u, precedence), shortlex_key(v, precedence)
    if ku == kv:
        return None
    return (u, v) if ku > kv else (v, u)


def _critical_pairs(rule1, rule2):
    """Words reducible two ways via the given (ordered) pair of rules."""
    l1, r1 = rule1
    l2, r2 = rule2
    pairs = []
    # proper overlap: a suffix of l1 is a prefix of l2
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            pairs.append((r1 + l2[k:], l1[:-k] + r2))
    # containment: l2 occurs inside l1
    if rule1 != rule2 and len(l2) <= len(l1):
        start = 0
        while True:
            t = l1.find(l2, start)
            if t < 0:
                break
            pairs.append((r1, l1[:t] + r2 + l1[t + len(l2):]))
            start = t + 1
    return pairs


def knuth_bendix(
    relations,
    alphabet: Alphabet,
    precedence: str | None = None,
    max_rules: int = 200,
    max_passes: int = 50,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> RewritingSystem:
    """Bounded Knuth-Bendix completion for a monoid presentation.

    ``relations`` is an iterable of (u, v) internal word strings declared
    equal.  Returns an interreduced system; status is ``verified-confluent``
    exactly when every critical pair of the final rules resolves, and
    ``bounded`` when a budget (rule count or pass count) was exhausted first.
    """
    if precedence is None:
        precedence = alphabet.monoid_chars()

    rules: list[tuple[str, str]] = []

    def reduce_with(word: str, rule_list) -> str:
        lhss = [l for l, _ in rule_list]
        rhss = [r for _, r in rule_list]
        out, steps = _kernel.reduce_word(word, lhss, rhss, max_steps)
        if steps < 0:
            raise NonTerminating(out, max_steps)
        return out

    def add_equation(u: str, v: str) -> bool:
        """Reduce an equation and install it as a rule; True if a rule was added."""
        u, v = reduce_with(u, rules), reduce_with(v, rules)
        oriented = _orient(u, v, precedence)
        if oriented is None or oriented in rules:
            return False
        rules.append(oriented)
        rules.sort(key=lambda r: (shortlex_key(r[0], precedence), shortlex_key(r[1], precedence)))
        return True

    def interreduce():
        """Remove/rewrite rules whose sides are reducible by the others."""
        changed = True
        while changed:
            changed = False
            for i, (l, r) in enumerate(list(rules)):
                others = rules[:i] + rules[i + 1:]
                l2 = reduce_with(l, others)
                r2 = reduce_with(r, others)
                if l2 != l or r2 != r:
                    rules.remove((l, r))
                    oriented = _orient(l2, r2, precedence)
                    if oriented is not None and oriented not in rules:
                        rules.append(oriented)
                    rules.sort(key=lambda rr: (shortlex_key(rr[0], precedence),
                                               shortlex_key(rr[1], precedence)))
                    changed = True
                    break

    for u, v in relations:
        add_equation(u, v)
    interreduce()

    status = BOUNDED
    passes = 0
    exhausted = False
    while passes < max_passes:
        passes += 1
        new_equations = []
        for r1 in rules:
            for r2 in rules:
                for x, y in _critical_pairs(r1, r2):
                    nx, ny = reduce_with(x, rules), reduce_with(y, rules)
                    if nx != ny:
                        new_equations.append((nx, ny))
        if not new_equations:
            status = CONFLUENT
            break
        added = False
        for u, v in sorted(set(new_equations),
                           key=lambda p: (shortlex_key(p[0], precedence),
                                          shortlex_key(p[1], precedence))):
            if len(rules) >= max_rules:
                exhausted = True
                break
            if add_equation(u, v):
                added = True
        interreduce()
        if exhausted:
            break
        if not added:
            status = CONFLUENT
            break

    return RewritingSystem(
        alphabet=alphabet,
        rules=tuple(rules),
        precedence=precedence,
        status=status,
        stats={"passes": passes, "rule_count": len(rules), "budget_exhausted": exhausted},
    )


def with_status(system: RewritingSystem, status: str) -> RewritingSystem:
    return replace(system, status=status)
