"""Exact integer polynomial helpers.

``ZPoly1`` is a univariate polynomial in t with integer coefficients (the
carrier of Hilbert-series numerators and K-polynomials).  The ``zmv_*``
functions operate on multivariate integer polynomials represented as plain
dicts mapping exponent tuples to nonzero ints.
"""

from __future__ import annotations


class ZPoly1:
    """Univariate integer polynomial; trailing zero coefficients never stored."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def term(c, e):
        if c == 0:
            return ZPoly1()
        return ZPoly1((0,) * e + (c,))

    @staticmethod
    def one_minus_tpow(e):
        """1 - t^e (e >= 1)."""
        if e < 1:
            raise ValueError("exponent must be positive")
        return ZPoly1((1,) + (0,) * (e - 1) + (-1,))

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return ZPoly1([self[k] + other[k] for k in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return ZPoly1([self[k] - other[k] for k in range(n)])

    def __neg__(self):
        return ZPoly1([-c for c in self.coeffs])

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return ZPoly1()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return ZPoly1(out)

    def __call__(self, x):
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def __eq__(self, other):
        return isinstance(other, ZPoly1) and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                base = "t" if e == 1 else f"t^{e}"
                if c == 1:
                    parts.append(base)
                elif c == -1:
                    parts.append(f"-{base}")
                else:
                    parts.append(f"{c}*{base}")
        return " + ".join(parts).replace("+ -", "- ")


# -- multivariate integer polynomials as {exponent tuple: int} dicts --------

def zmv_zero():
    return {}


def zmv_const(nvars, c):
    return {(0,) * nvars: c} if c else {}


def zmv_add(a, b):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        elif m in out:
            del out[m]
    return out


def zmv_sub(a, b):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) - c
        if v:
            out[m] = v
        elif m in out:
            del out[m]
    return out


def zmv_neg(a):
    return {m: -c for m, c in a.items()}


def zmv_scale(a, k):
    if k == 0:
        return {}
    return {m: k * c for m, c in a.items()}


def zmv_mul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            elif m in out:
                del out[m]
    return out


def zmv_mul_term(a, mono, c):
    if c == 0:
        return {}
    return {tuple(x + y for x, y in zip(m, mono)): v * c for m, v in a.items()}


def zmv_weighted_degrees(a, weights):
    """Set of weighted degrees appearing in a."""
    return {sum(w * e for w, e in zip(weights, m)) for m in a}


def zmv_eval_powers(a, exponents):
    """Substitute variable j -> t^exponents[j]; returns a ZPoly1."""
    acc = {}
    for m, c in a.items():
        e = sum(x * k for x, k in zip(exponents, m))
        acc[e] = acc.get(e, 0) + c
    if not acc:
        return ZPoly1()
    out = [0] * (max(acc) + 1)
    for e, c in acc.items():
        out[e] = c
    return ZPoly1(out)
