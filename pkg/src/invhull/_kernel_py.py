"""Pure-Python word-reduction kernel.

Byte-for-byte equivalent to the compiled kernel ``invhull._kernel``; the
reduction strategy is part of the library contract:

    repeat: among all (position, rule_index) matches pick the smallest
    position, breaking ties by rule index, and replace.  Stop when no rule
    matches or the step budget is exhausted.

Returns ``(word, steps)`` where ``steps`` is the number of replacements
performed, or ``(partial_word, -1)`` if the budget ran out.
"""

from __future__ import annotations


def reduce_word(word: str, lhss, rhss, max_steps: int):
    nrules = len(lhss)
    if nrules == 0:
        return word, 0
    maxlhs = max(len(l) for l in lhss)
    steps = 0
    start = 0
    while True:
        best_pos = -1
        best_rule = -1
        for i in range(nrules):
            p = word.find(lhss[i], start)
            if p >= 0 and (best_pos < 0 or p < best_pos):
                best_pos = p
                best_rule = i
        if best_pos < 0:
            if start == 0:
                return word, steps
            # nothing at or after the hint; rescan the untouched prefix once
            start = 0
            continue
        if steps >= max_steps:
            return word, -1
        lhs = lhss[best_rule]
        word = word[:best_pos] + rhss[best_rule] + word[best_pos + len(lhs):]
        steps += 1
        start = best_pos - maxlhs + 1
        if start < 0:
            start = 0
