"""Alphabets and words for monoid presentations.

A word is internally a ``str`` over a private one-character alphabet so that
substring search and replacement run at C speed; the public face of a word is
a tuple of generator names.  The generator listing order doubles as the
precedence for the shortlex order used by the rewriting machinery.

Word syntax accepted by :func:`Alphabet.parse`:

* whitespace-separated generator names: ``"a b b a"``
* contiguous single-character names: ``"abba"``
* powers: ``"ab^2"``, ``"a^3 b"``
* the empty word: ``""``, ``"1"`` or ``"e"``
* inverses (group words only): ``"a^-1"``, ``"ab^-2"``

Internally an inverse generator is one more private character, so group words
reuse all the string machinery.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

# Private characters.  Generator i maps to _CHARS[2*i]; its formal inverse
# (only used for group words) to _CHARS[2*i + 1].
_CHARS = (
    "abcdefghijklmnopqrstuvwxyz"
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "0123456789"
    "!#$%&()*+,-./:;<=>?@[]^_`{|}~"
)

_TOKEN = re.compile(r"([A-Za-z_][A-Za-z_0-9']*)(?:\^(-?\d+))?")


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """An ordered list of generator names (the shortlex precedence)."""

    names: tuple[str, ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise WordError(f"duplicate generator names in {self.names}")
        if 2 * len(self.names) > len(_CHARS):
            raise WordError("alphabet too large")
        self._index.update({n: i for i, n in enumerate(self.names)})

    @classmethod
    def of(cls, names) -> "Alphabet":
        if isinstance(names, Alphabet):
            return names
        if isinstance(names, str):
            names = names.split()
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def char(self, name: str, inverse: bool = False) -> str:
        try:
            i = self._index[name]
        except KeyError:
            raise WordError(f"unknown generator {name!r}") from None
        return _CHARS[2 * i + (1 if inverse else 0)]

    def letter_of_char(self, ch: str) -> tuple[str, bool]:
        """Return (generator name, is_inverse) for a private character."""
        i = _CHARS.index(ch)
        return self.names[i // 2], bool(i % 2)

    # -- parsing / formatting -------------------------------------------

    def parse(self, text, group: bool = False) -> str:
        """Parse user text into an internal word string."""
        if isinstance(text, (tuple, list)):
            return "".join(self.char(t) for t in text)
        text = text.strip()
        if text in ("", "1", "e") and "e" not in self._index:
            return ""
        if text in ("", "1"):
            return ""
        out = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if not m:
                raise WordError(f"cannot parse word {text!r} at position {pos}")
            name, power = m.group(1), m.group(2)
            if name not in self._index and len(name) > 1:
                # contiguous single-char names, e.g. "abba"
                for ch in name:
                    out.append(self.char(ch))
                if power is not None:
                    # the power binds to the last letter: "ab^2" = a b b
                    n = int(power)
                    last = out.pop()
                    out.extend(self._powered(last, n, group))
                pos = m.end()
                continue
            ch = self.char(name)
            n = 1 if power is None else int(power)
            out.extend(self._powered(ch, n, group))
            pos = m.end()
        return "".join(out)

    def _powered(self, ch: str, n: int, group: bool) -> list[str]:
        if n >= 0:
            return [ch] * n
        if not group:
            raise WordError("negative powers only make sense in group words")
        return [self.invert_char(ch)] * (-n)

    def invert_char(self, ch: str) -> str:
        i = _CHARS.index(ch)
        return _CHARS[i ^ 1]

    def invert_word(self, word: str) -> str:
        return "".join(self.invert_char(c) for c in reversed(word))

    def format(self, word: str) -> str:
        """Human-readable rendering with collected powers (a b^2 style)."""
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name, inv = self.letter_of_char(word[i])
            n = j - i
            if inv:
                parts.append(f"{name}^-{n}")
            elif n == 1:
                parts.append(name)
            else:
                parts.append(f"{name}^{n}")
            i = j
        return " ".join(parts)

    def as_tuple(self, word: str) -> tuple[str, ...]:
        out = []
        for ch in word:
            name, inv = self.letter_of_char(ch)
            out.append(name + "^-1" if inv else name)
        return tuple(out)

    def group_chars(self) -> str:
        """All private characters of the doubled (group) alphabet, in order."""
        return "".join(_CHARS[2 * i + k] for i in range(len(self.names)) for k in (0, 1))

    def monoid_chars(self) -> str:
        return "".join(_CHARS[2 * i] for i in range(len(self.names)))


def shortlex_key(word: str, precedence: str):
    """Sort key for the length-lexicographic order given a precedence string."""
    rank = {c: i for i, c in enumerate(precedence)}
    return (len(word), tuple(rank[c] for c in word))


def shortlex_less(u: str, v: str, precedence: str) -> bool:
    return shortlex_key(u, precedence) < shortlex_key(v, precedence)


def free_reduce(word: str, alphabet: Alphabet) -> str:
    """Freely reduce a group word (cancel adjacent x x^-1 pairs)."""
    out: list[str] = []
    for ch in word:
        if out and out[-1] == alphabet.invert_char(ch):
            out.pop()
        else:
            out.append(ch)
    return "".join(out)
