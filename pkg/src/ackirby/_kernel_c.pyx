# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled word kernel; mirrors _kernel_py exactly.

Words are Python tuples of nonzero signed integers.  The hot loops run on
malloc'd C int buffers; only the results are boxed back into tuples.
"""

from libc.stdlib cimport malloc, free
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF


cdef inline int _key(int v) noexcept nogil:
    if v > 0:
        return 2 * (v - 1)
    return 2 * (-v - 1) + 1


cdef int* _to_buf(tuple w, Py_ssize_t* n) except NULL:
    cdef Py_ssize_t i, ln = len(w)
    cdef int* buf = <int*> malloc((ln if ln > 0 else 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    for i in range(ln):
        buf[i] = w[i]
    n[0] = ln
    return buf


cdef tuple _from_buf(int* buf, Py_ssize_t n):
    cdef tuple out = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object v
    for i in range(n):
        v = <object> <int> buf[i]
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


def letter_key(v):
    """Total order on letters: g1 < g1^-1 < g2 < g2^-1 < ..."""
    return _key(v)


def reduce_word(letters):
    """Freely reduce a raw letter sequence by a single stack pass."""
    cdef tuple w = tuple(letters)
    cdef Py_ssize_t i, top = 0, ln = len(w)
    cdef int v
    cdef int* stack = <int*> malloc((ln if ln > 0 else 1) * sizeof(int))
    if stack == NULL:
        raise MemoryError()
    try:
        for i in range(ln):
            v = w[i]
            if top > 0 and stack[top - 1] == -v:
                top -= 1
            else:
                stack[top] = v
                top += 1
        return _from_buf(stack, top)
    finally:
        free(stack)


def reduce_concat(a, b):
    """Concatenate two already-reduced words, cancelling at the seam."""
    cdef tuple ta = a, tb = b
    cdef Py_ssize_t la = len(ta), lb = len(tb), t = 0
    cdef Py_ssize_t m = la if la < lb else lb
    while t < m and <int> ta[la - 1 - t] == -(<int> tb[t]):
        t += 1
    return ta[:la - t] + tb[t:]


def invert_word(w):
    """Inverse of a reduced word (reverse and negate)."""
    cdef tuple tw = tuple(w)
    cdef Py_ssize_t n = len(tw), i
    cdef int* buf = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            buf[i] = -(<int> tw[n - 1 - i])
        return _from_buf(buf, n)
    finally:
        free(buf)


def cyclic_split(w):
    """Split a reduced word as conjugator * core * conjugator^-1."""
    cdef tuple tw = tuple(w)
    cdef Py_ssize_t i = 0, j = len(tw) - 1
    while i < j and <int> tw[i] == -(<int> tw[j]):
        i += 1
        j -= 1
    return tw[:i], tw[i:j + 1]


cdef Py_ssize_t _min_rotation(int* cand, Py_ssize_t n, int* best, bint have_best) noexcept nogil:
    # Overwrites best with the minimal rotation of cand (under _key) if it
    # beats the current best; returns 1 if best changed.
    cdef Py_ssize_t s, i, changed = 0
    cdef int cmp_res
    for s in range(n):
        cmp_res = 0
        if have_best or changed:
            for i in range(n):
                cmp_res = _key(cand[(s + i) % n]) - _key(best[i])
                if cmp_res != 0:
                    break
            if cmp_res >= 0:
                continue
        for i in range(n):
            best[i] = cand[(s + i) % n]
        changed = 1
        have_best = 1
    return changed


def canonical_rotation(core):
    """Lexicographically minimal rotation of a cyclically reduced word
    or of its inverse, under the letter_key order."""
    cdef tuple tc = tuple(core)
    cdef Py_ssize_t n = len(tc), i
    if n == 0:
        return ()
    cdef int* fwd = <int*> malloc(n * sizeof(int))
    cdef int* inv = <int*> malloc(n * sizeof(int))
    cdef int* best = <int*> malloc(n * sizeof(int))
    if fwd == NULL or inv == NULL or best == NULL:
        free(fwd); free(inv); free(best)
        raise MemoryError()
    try:
        for i in range(n):
            fwd[i] = tc[i]
            inv[i] = -(<int> tc[n - 1 - i])
        _min_rotation(fwd, n, best, 0)
        _min_rotation(inv, n, best, 1)
        return _from_buf(best, n)
    finally:
        free(fwd); free(inv); free(best)


def canonical_relator(w):
    """Canonical form of a relator up to conjugation and inversion."""
    return canonical_rotation(cyclic_split(w)[1])


def expand_multiply(ci, cj):
    """All canonical products of a rotation of ci with a rotation of
    cj or of cj^-1; see _kernel_py.expand_multiply."""
    cdef tuple tci = tuple(ci), tcj = tuple(cj)
    cdef Py_ssize_t ni = len(tci), nj = len(tcj)
    cdef Py_ssize_t np = ni if ni > 0 else 1
    cdef Py_ssize_t nq = nj if nj > 0 else 1
    cdef Py_ssize_t p, q, i, t, m, lw
    cdef int eps_idx
    cdef dict res = {}
    cdef tuple child
    # buffers: u (rotation of ci), v (rotation of cj or cj^-1), w (product)
    cdef int* a = <int*> malloc((ni + 1) * sizeof(int))
    cdef int* bpos = <int*> malloc((nj + 1) * sizeof(int))
    cdef int* bneg = <int*> malloc((nj + 1) * sizeof(int))
    cdef int* w = <int*> malloc((ni + nj + 1) * sizeof(int))
    if a == NULL or bpos == NULL or bneg == NULL or w == NULL:
        free(a); free(bpos); free(bneg); free(w)
        raise MemoryError()
    try:
        for i in range(ni):
            a[i] = tci[i]
        for i in range(nj):
            bpos[i] = tcj[i]
            bneg[i] = -(<int> tcj[nj - 1 - i])
        for p in range(np):
            for eps_idx in range(2):
                for q in range(nq):
                    # w = rot_p(ci) . rot_q(base), cancelling at the seam
                    t = 0
                    m = ni if ni < nj else nj
                    if eps_idx == 0:
                        while t < m and a[(p + ni - 1 - t) % ni] == -bpos[(q + t) % nj]:
                            t += 1
                    else:
                        while t < m and a[(p + ni - 1 - t) % ni] == -bneg[(q + t) % nj]:
                            t += 1
                    lw = 0
                    for i in range(ni - t):
                        w[lw] = a[(p + i) % ni]
                        lw += 1
                    for i in range(nj - t):
                        if eps_idx == 0:
                            w[lw] = bpos[(q + t + i) % nj]
                        else:
                            w[lw] = bneg[(q + t + i) % nj]
                        lw += 1
                    child = canonical_relator(_from_buf(w, lw))
                    if child not in res:
                        res[child] = (p, 1 if eps_idx == 0 else -1, q)
        return res
    finally:
        free(a); free(bpos); free(bneg); free(w)
