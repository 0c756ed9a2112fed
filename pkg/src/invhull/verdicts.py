"""Three-valued verdicts and provenance tags.

Everything the library claims is either exact, verified up to an explicit
bound, or an assumption imported from outside (literature).  Verdict objects
carry that provenance so reports can never silently launder a bounded check
into a theorem.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Provenance:
    kind: str  # "verified-exact" | "verified-to-bound" | "assumed"
    bound: int | None = None
    source: str | None = None  # for assumed: where the assumption comes from

    def __post_init__(self):
        if self.kind not in ("verified-exact", "verified-to-bound", "assumed"):
            raise ValueError(f"bad provenance kind {self.kind!r}")
        if self.kind == "verified-to-bound" and self.bound is None:
            raise ValueError("verified-to-bound requires a bound")

    def as_json(self):
        if self.kind == "verified-to-bound":
            return {"kind": self.kind, "bound": self.bound}
        if self.kind == "assumed" and self.source:
            return {"kind": self.kind, "source": self.source}
        return {"kind": self.kind}

    def __str__(self):
        if self.kind == "verified-to-bound":
            return f"verified-to-bound({self.bound})"
        return self.kind


EXACT = Provenance("verified-exact")


def to_bound(b: int) -> Provenance:
    return Provenance("verified-to-bound", bound=b)


def assumed(source: str) -> Provenance:
    return Provenance("assumed", source=source)


@dataclass(frozen=True)
class Membership:
    """Answer to 'is this group element in the monoid's positive cone?'."""

    kind: str  # "InP" | "NotInP" | "Unknown"
    witness: Any = None  # for InP: a positive word (internal string)
    provenance: Provenance = EXACT
    note: str = ""

    def __post_init__(self):
        if self.kind not in ("InP", "NotInP", "Unknown"):
            raise ValueError(f"bad membership kind {self.kind!r}")

    @property
    def is_in(self) -> bool | None:
        if self.kind == "InP":
            return True
        if self.kind == "NotInP":
            return False
        return None

    def as_json(self, fmt=None):
        out = {"kind": self.kind, "provenance": self.provenance.as_json()}
        if self.witness is not None:
            out["witness"] = fmt(self.witness) if fmt else self.witness
        if self.note:
            out["note"] = self.note
        return out


def in_p(witness, provenance: Provenance = EXACT) -> Membership:
    return Membership("InP", witness=witness, provenance=provenance)


def not_in_p(provenance: Provenance = EXACT, note: str = "") -> Membership:
    return Membership("NotInP", provenance=provenance, note=note)


def unknown(bound: int, note: str = "") -> Membership:
    return Membership("Unknown", provenance=to_bound(bound), note=note)
