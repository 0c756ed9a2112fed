# cython: language_level=3
"""Compiled word-reduction kernel.

Semantics are identical to ``invhull._kernel_py.reduce_word`` (that module's
docstring is the contract); this version just pushes the scan loop into C.
"""


def reduce_word(str word, list lhss, list rhss, long max_steps):
    cdef Py_ssize_t nrules = len(lhss)
    if nrules == 0:
        return word, 0
    cdef Py_ssize_t maxlhs = 0
    cdef Py_ssize_t i, n
    for i in range(nrules):
        n = len(<str>lhss[i])
        if n > maxlhs:
            maxlhs = n
    cdef long steps = 0
    cdef Py_ssize_t start = 0
    cdef Py_ssize_t best_pos, best_rule, p
    cdef str lhs
    while True:
        best_pos = -1
        best_rule = -1
        for i in range(nrules):
            p = word.find(<str>lhss[i], start)
            if p >= 0 and (best_pos < 0 or p < best_pos):
                best_pos = p
                best_rule = i
        if best_pos < 0:
            if start == 0:
                return word, steps
            start = 0
            continue
        if steps >= max_steps:
            return word, -1
        lhs = <str>lhss[best_rule]
        word = word[:best_pos] + <str>rhss[best_rule] + word[best_pos + len(lhs):]
        steps += 1
        start = best_pos - maxlhs + 1
        if start < 0:
            start = 0
