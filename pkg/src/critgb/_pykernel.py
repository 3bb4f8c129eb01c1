"""Pure-python (numpy) fallback for the compiled GF(p) kernels.

Same contracts as ``critgb._kernel``; selected automatically when the
extension is not built.  Row operations are vectorized, so the fallback is
usable for the full test suite, just slower on large eliminations.
"""

import numpy as np


def rref(a, p, reduced=True):
    """In-place (reduced) row echelon form; returns (rank, pivot column list)."""
    rows, cols = a.shape
    r = 0
    pivots = []
    for c in range(cols):
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        v = int(a[r, c])
        if v != 1:
            a[r, c:] = (a[r, c:] * pow(v, p - 2, p)) % p
        if reduced:
            sel = np.nonzero(a[:, c])[0]
            sel = sel[sel != r]
        else:
            sel = r + 1 + np.nonzero(a[r + 1:, c])[0]
        if sel.size:
            a[np.ix_(sel, np.arange(c, cols))] = (
                a[np.ix_(sel, np.arange(c, cols))]
                - np.outer(a[sel, c], a[r, c:])) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return r, pivots


def axpy_merge(hc, hv, gc, gv, shift, factor, p):
    """h + factor * (g << shift) on strictly-descending code arrays."""
    factor %= p
    gc2 = gc + shift
    gv2 = (gv * factor) % p
    codes = np.concatenate([hc, gc2])
    vals = np.concatenate([hv, gv2])
    order = np.argsort(-codes, kind="stable")
    codes = codes[order]
    vals = vals[order]
    if codes.size == 0:
        return codes, vals
    starts = np.concatenate([[0], np.nonzero(codes[1:] != codes[:-1])[0] + 1])
    sums = np.add.reduceat(vals, starts) % p
    codes = codes[starts]
    keep = sums != 0
    return codes[keep], sums[keep]
