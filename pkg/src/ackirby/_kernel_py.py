"""Pure-Python word kernel.

Letters are nonzero signed integers: +k is the k-th generator, -k its
inverse.  Words are tuples of letters.  The compiled twin of this module
(`_kernel_c`) implements the same functions; `_kernel` picks one at import
time.  Keep the two implementations in lockstep.
"""


def letter_key(v):
    """Total order on letters: g1 < g1^-1 < g2 < g2^-1 < ...

    >>> sorted([2, -1, 1, -2], key=letter_key)
    [1, -1, 2, -2]
    """
    return 2 * (v - 1) if v > 0 else 2 * (-v - 1) + 1


def reduce_word(letters):
    """Freely reduce a raw letter sequence by a single stack pass."""
    out = []
    for v in letters:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    return tuple(out)


def reduce_concat(a, b):
    """Concatenate two already-reduced words, cancelling at the seam."""
    la, lb = len(a), len(b)
    t = 0
    m = la if la < lb else lb
    while t < m and a[la - 1 - t] == -b[t]:
        t += 1
    return a[:la - t] + b[t:]


def invert_word(w):
    """Inverse of a reduced word (reverse and negate)."""
    return tuple(-v for v in reversed(w))


def cyclic_split(w):
    """Split a reduced word as conjugator * core * conjugator^-1.

    Returns (conjugator, core) with the core cyclically reduced.
    """
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[:i], w[i:j + 1]


def canonical_rotation(core):
    """Lexicographically minimal rotation of a cyclically reduced word
    or of its inverse, under the letter_key order."""
    n = len(core)
    if n == 0:
        return ()
    best = None
    best_key = None
    for cand in (core, invert_word(core)):
        for s in range(n):
            rot = cand[s:] + cand[:s]
            key = tuple(letter_key(v) for v in rot)
            if best_key is None or key < best_key:
                best, best_key = rot, key
    return best


def canonical_relator(w):
    """Canonical form of a relator up to conjugation and inversion."""
    return canonical_rotation(cyclic_split(w)[1])


def expand_multiply(ci, cj):
    """All canonical products of a rotation of ci with a rotation of
    cj or of cj^-1.

    Both inputs must be canonical relators.  Returns a dict mapping each
    distinct child canonical relator to its first witness (p, eps, q):
    rotate ci left by p, take cj (eps=+1) or cj^-1 (eps=-1) rotated left
    by q, multiply on the right.  Witness order: p, then eps (+1 first),
    then q.
    """
    res = {}
    np = len(ci) if ci else 1
    nq = len(cj) if cj else 1
    cj_inv = invert_word(cj)
    for p in range(np):
        u = ci[p:] + ci[:p]
        for eps in (1, -1):
            base = cj if eps == 1 else cj_inv
            for q in range(nq):
                v = base[q:] + base[:q]
                child = canonical_relator(reduce_concat(u, v))
                if child not in res:
                    res[child] = (p, eps, q)
    return res
