# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled GF(p) kernels: dense row echelon and sorted-term merges.

Coefficients are int64 residues in [0, p) with p < 2^16, so every product
fits comfortably in a signed 64-bit word.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a != 0 mod p
    cdef long long old_r = a % p, r = p
    cdef long long old_s = 1, s = 0
    cdef long long q, t
    while r != 0:
        q = old_r / r
        t = old_r - q * r; old_r = r; r = t
        t = old_s - q * s; old_s = s; s = t
    if old_s < 0:
        old_s += p
    return old_s


def rref(cnp.int64_t[:, ::1] a, long long p, bint reduced=True):
    """In-place (reduced) row echelon form; returns (rank, pivot column list)."""
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, i, j, c, piv
    cdef long long inv, f, v
    pivots = []
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                v = a[r, j]; a[r, j] = a[piv, j]; a[piv, j] = v
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                if a[r, j]:
                    a[r, j] = (a[r, j] * inv) % p
        for i in range(0 if reduced else r + 1, rows):
            if i == r:
                continue
            f = a[i, c]
            if f:
                f = p - f
                for j in range(c, cols):
                    v = a[r, j]
                    if v:
                        a[i, j] = (a[i, j] + f * v) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return r, pivots


def axpy_merge(cnp.int64_t[:] hc, cnp.int64_t[:] hv,
               cnp.int64_t[:] gc, cnp.int64_t[:] gv,
               long long shift, long long factor, long long p):
    """h + factor * (g << shift) on strictly-descending code arrays.

    Codes are order-preserving packed monomials; adding ``shift`` multiplies
    every g monomial by a fixed monomial.  Returns new (codes, coeffs).
    """
    cdef Py_ssize_t lh = hc.shape[0], lg = gc.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] oc = np.empty(lh + lg, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ov = np.empty(lh + lg, dtype=np.int64)
    cdef cnp.int64_t[:] ocv = oc, ovv = ov
    cdef Py_ssize_t i = 0, j = 0, k = 0
    cdef long long cg, v
    factor %= p
    while i < lh and j < lg:
        cg = gc[j] + shift
        if hc[i] > cg:
            ocv[k] = hc[i]; ovv[k] = hv[i]
            i += 1; k += 1
        elif hc[i] < cg:
            v = (factor * gv[j]) % p
            if v:
                ocv[k] = cg; ovv[k] = v
                k += 1
            j += 1
        else:
            v = (hv[i] + factor * gv[j]) % p
            if v:
                ocv[k] = cg; ovv[k] = v
                k += 1
            i += 1; j += 1
    while i < lh:
        ocv[k] = hc[i]; ovv[k] = hv[i]
        i += 1; k += 1
    while j < lg:
        v = (factor * gv[j]) % p
        if v:
            ocv[k] = gc[j] + shift; ovv[k] = v
            k += 1
        j += 1
    return oc[:k], ov[:k]
