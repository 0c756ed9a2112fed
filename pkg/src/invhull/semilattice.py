"""Finite meet-semilattices with a least element 0.

Elements are hashable labels.  The zero element is the absorbing bottom;
``nonzero()`` enumerates everything else (the "proper" part most
constructions act on).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations


class SemilatticeError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteSemilattice:
    elements: tuple
    meets: dict = field(compare=False)
    zero: object = "0"

    @classmethod
    def from_meet(cls, elements, meet_fn, zero="0") -> "FiniteSemilattice":
        elements = tuple(elements)
        if zero not in elements:
            elements = (zero,) + elements
        meets = {}
        for a in elements:
            for b in elements:
                meets[(a, b)] = (
                    zero if a == zero or b == zero else meet_fn(a, b)
                )
        lat = cls(elements, meets, zero)
        lat.validate()
        return lat

    def meet(self, a, b):
        return self.meets[(a, b)]

    def leq(self, a, b) -> bool:
        return self.meet(a, b) == a

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def nonzero(self) -> tuple:
        return tuple(e for e in self.elements if e != self.zero)

    def down_set(self, a) -> tuple:
        """Nonzero elements below a (inclusive)."""
        return tuple(e for e in self.nonzero() if self.leq(e, a))

    def meet_closure(self, seed) -> set:
        """Close a subset under pairwise meets (zero never added)."""
        out = {e for e in seed if e != self.zero}
        grew = True
        while grew:
            grew = False
            for a, b in combinations(sorted(out, key=self.elements.index), 2):
                m = self.meet(a, b)
                if m != self.zero and m not in out:
                    out.add(m)
                    grew = True
        return out

    def validate(self) -> None:
        els = self.elements
        for a in els:
            if self.meet(a, a) != a:
                raise SemilatticeError(f"meet not idempotent at {a!r}")
            if self.meet(a, self.zero) != self.zero:
                raise SemilatticeError(f"zero not absorbing at {a!r}")
            for b in els:
                if self.meet(a, b) != self.meet(b, a):
                    raise SemilatticeError(f"meet not commutative at {a!r},{b!r}")
                for c in els:
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c)):
                        raise SemilatticeError(
                            f"meet not associative at {a!r},{b!r},{c!r}")


def chain_semilattice(n: int, prefix: str = "c") -> FiniteSemilattice:
    """0 < c{n-1} < ... < c1 < c0 (c0 on top; meet takes the larger index)."""
    names = [f"{prefix}{i}" for i in range(n)]

    def meet(a, b):
        return names[max(names.index(a), names.index(b))]

    return FiniteSemilattice.from_meet(names, meet)


def diamond_semilattice() -> FiniteSemilattice:
    """top above two incomparable elements e, f with meet ef, bottom 0."""

    def meet(a, b):
        if a == b:
            return a
        if a == "top":
            return b
        if b == "top":
            return a
        return "ef"  # e^f, e^ef and f^ef all come out at ef

    return FiniteSemilattice.from_meet(["top", "e", "f", "ef"], meet)


def atoms_semilattice(k: int, with_top: bool = True) -> FiniteSemilattice:
    """k pairwise-disjoint atoms a1..ak, optionally under a common top."""
    names = [f"a{i + 1}" for i in range(k)]
    if with_top:
        names = ["top"] + names

    def meet(a, b):
        if a == b:
            return a
        if a == "top":
            return b
        if b == "top":
            return a
        return "0"

    return FiniteSemilattice.from_meet(names, meet)
