"""Grothendieck polynomials by divided-difference descent.

The K-polynomial of the generic maximal-minors ideal equals the Grothendieck
polynomial of a Grassmannian permutation evaluated at powers of t; this
module computes that polynomial from the recursion

    G_{w0}      = prod_i (1 - t_i)^{m - i},   w0(i) = m + 1 - i  on {1..m},
    G_{w.s_i}   = -d_i(t_{i+1} * G_w)         when length(w.s_i) < length(w),

where d_i is the i-th divided difference.  Polynomials are integer dicts
over t_1..t_m (see ``critgb.zpoly``).
"""

from __future__ import annotations

from .zpoly import zmv_add, zmv_eval_powers, zmv_mul, zmv_mul_term, zmv_neg

MAX_VARIABLES = 8  # combinatorial blowup guard


def is_permutation(w):
    return sorted(w) == list(range(1, len(w) + 1))


def length(w):
    """Inversion count."""
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w))
               if w[i] > w[j])


def _check(w):
    if not is_permutation(w):
        raise ValueError(f"{w} is not a permutation of 1..{len(w)}")
    if len(w) > MAX_VARIABLES:
        raise ValueError(f"permutations on more than {MAX_VARIABLES} letters "
                         "are out of desk scale")


def divided_difference(H, i, nvars):
    """(H - H with t_i, t_{i+1} swapped) / (t_i - t_{i+1}), 1-based i.

    Computed termwise with the exact telescoping identity
    (t^a s^b - t^b s^a)/(t - s) = sign * (ts)^{min} * sum t^x s^y,
    so the division can never leave a remainder.
    """
    if not 1 <= i < nvars:
        raise ValueError(f"divided difference index {i} out of range")
    a_idx, b_idx = i - 1, i
    out = {}
    for m, c in H.items():
        a, b = m[a_idx], m[b_idx]
        if a == b:
            continue
        lo, hi = min(a, b), max(a, b)
        sign = 1 if a > b else -1
        # (t^hi s^lo - t^lo s^hi)/(t - s) = (ts)^lo * sum_{x+y=hi-lo-1} t^x s^y
        for x in range(hi - lo):
            y = hi - lo - 1 - x
            mm = list(m)
            mm[a_idx] = lo + x
            mm[b_idx] = lo + y
            mm = tuple(mm)
            v = out.get(mm, 0) + sign * c
            if v:
                out[mm] = v
            elif mm in out:
                del out[mm]
    return out


def _t_times(H, i, nvars):
    mono = tuple(1 if k == i - 1 else 0 for k in range(nvars))
    return zmv_mul_term(H, mono, 1)


def inverse(w):
    out = [0] * len(w)
    for i, v in enumerate(w):
        out[v - 1] = i + 1
    return tuple(out)


def grothendieck_poly(w, _memo=None):
    """Grothendieck polynomial of w, memoized per call tree.

    The recursion steps by left multiplication: removing a descent value
    pair (i, i+1) of w applies -d_i(t_{i+1} * .).  Concretely the descent
    chain runs over one-line ascents of the inverse permutation; this is
    the convention under which a Grassmannian permutation with descent at
    position k yields a polynomial in t_1..t_k only.  The smallest valid
    index is taken at each step; the result is independent of that choice
    (checked in tests).
    """
    w = tuple(w)
    _check(w)
    m = len(w)
    memo = {} if _memo is None else _memo

    def rec(v):
        # v is the inverse of the permutation whose polynomial this is
        got = memo.get(v)
        if got is not None:
            return got
        asc = next((i for i in range(m - 1) if v[i] < v[i + 1]), None)
        if asc is None:
            # w0 is its own inverse: prod (1 - t_i)^{m - i}
            poly = {(0,) * m: 1}
            for i in range(1, m + 1):
                one_minus = zmv_add({(0,) * m: 1},
                                    zmv_neg(_t_times({(0,) * m: 1}, i, m)))
                for _ in range(m - i):
                    poly = zmv_mul(poly, one_minus)
            memo[v] = poly
            return poly
        up = list(v)
        up[asc], up[asc + 1] = up[asc + 1], up[asc]
        higher = rec(tuple(up))
        poly = zmv_neg(divided_difference(_t_times(higher, asc + 2, m), asc + 1, m))
        memo[v] = poly
        return poly

    return rec(inverse(w))


def determinantal_permutation(shape):
    """w(i) = i for i <= p, w(i) = i + 1 for p < i <= n, w(n+1) = p + 1."""
    n, p = shape.n, shape.p
    return tuple(list(range(1, p + 1)) + list(range(p + 2, n + 2)) + [p + 1])


def evaluate_kpoly(shape):
    """Grothendieck polynomial of the shape's permutation at
    t_j = t^{d_{j-1} - 1}; equals the determinantal Hilbert-series numerator."""
    w = determinantal_permutation(shape)
    g = grothendieck_poly(w)
    m = len(w)
    for mono in g:
        if any(mono[k] for k in range(shape.p + 1, m)):
            raise AssertionError("Grassmannian Grothendieck polynomial uses "
                                 "variables beyond t_{p+1}")
    powers = [d - 1 for d in shape.degrees] + [0] * (m - shape.p - 1)
    return zmv_eval_powers(g, powers)
