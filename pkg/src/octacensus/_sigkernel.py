"""Compiled minimal-encoding search used by isomorphism signatures.

Gluings are passed as two ``(n, 4)`` int arrays: the neighbour tetrahedron
(``-1`` on boundary faces) and the permutation index. Returns the codes of
the lexicographically smallest breadth-first encoding, identical to the
pure Python search in :mod:`octacensus.triangulation`.
"""
from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None


def _min_codes(nbr, perm, perms, compose, inverse):
    n = nbr.shape[0]
    m = 8 * n
    best = np.empty(m, np.int64)
    codes = np.empty(m, np.int64)
    have_best = False
    order = np.empty(n, np.int64)
    index = np.empty(n, np.int64)
    lab = np.empty(n, np.int64)
    for start in range(n):
        for p0 in range(24):
            for t in range(n):
                index[t] = -1
            order[0] = start
            index[start] = 0
            lab[start] = p0
            count = 1
            less = not have_best
            worse = False
            pos = 0
            k = 0
            while k < count and not worse:
                t = order[k]
                inv = inverse[lab[t]]
                for nf in range(4):
                    f = perms[inv, nf]
                    t2 = nbr[t, f]
                    if t2 < 0:
                        a = 0
                        b = 0
                    else:
                        p = perm[t, f]
                        if index[t2] < 0:
                            index[t2] = count
                            order[count] = t2
                            count += 1
                            lab[t2] = compose[lab[t], inverse[p]]
                        a = index[t2] + 1
                        b = compose[compose[lab[t2], p], inv]
                    for c in (a, b):
                        if not less:
                            if c > best[pos]:
                                worse = True
                                break
                            if c < best[pos]:
                                less = True
                        codes[pos] = c
                        pos += 1
                    if worse:
                        break
                k += 1
            if worse:
                continue
            if count != n:
                return np.empty(0, np.int64)
            if less:
                best[:] = codes
                have_best = True
    return best


if njit is not None:
    min_codes = njit(cache=True, nogil=True)(_min_codes)
else:  # pragma: no cover
    min_codes = _min_codes
