"""Closed-form Hilbert series, complexity indicators and averages.

Everything here is shape-level arithmetic: no polynomial system is ever
touched.  The brute-force counterparts live in ``critgb.groebner`` and the
tests check both sides against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateSeriesError, NonPolynomialError
from .zpoly import ZPoly1


def compositions(total, parts):
    """All tuples of ``parts`` non-negative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


class RationalSeries:
    """numerator / prod (1 - t^e)^mult with exact integer expansion."""

    __slots__ = ("numerator", "denominator", "truncation")

    def __init__(self, numerator, denominator, truncation):
        self.numerator = numerator
        self.denominator = tuple(denominator)  # (exponent, multiplicity) pairs
        self.truncation = truncation

    def expand(self, order=None):
        """Integer coefficients c_0..c_order of the power-series expansion.

        Dividing by (1 - t^e) is the cumulative-sum recurrence
        c_k += c_{k-e}; everything stays in exact integers.
        """
        order = self.truncation if order is None else order
        coeffs = [self.numerator[k] for k in range(order + 1)]
        for e, mult in self.denominator:
            if e < 1:
                raise DegenerateSeriesError(
                    "denominator contains a (1 - t^0) factor; series undefined")
            for _ in range(mult):
                for k in range(e, order + 1):
                    coeffs[k] += coeffs[k - e]
        return coeffs

    def expand_polynomial(self, order=None, window=None):
        """Expansion that must terminate; returns a ZPoly1.

        ``window`` trailing coefficients must vanish (default: one more than
        the total denominator multiplicity, enough to certify termination of
        a rational function with these poles).
        """
        order = self.truncation if order is None else order
        if window is None:
            window = 1 + sum(m for _, m in self.denominator)
        coeffs = self.expand(order)
        if any(coeffs[-window:]):
            raise NonPolynomialError(
                f"series still nonzero at degrees {order - window + 1}..{order}")
        return ZPoly1(coeffs)

    def __repr__(self):
        den = "".join(f"(1-t^{e})^{m}" if m > 1 else f"(1-t^{e})"
                      for e, m in self.denominator)
        return f"({self.numerator!r}) / {den}"


def determinantal_numerator(shape):
    """K-polynomial: numerator of the weighted Hilbert series of the ideal
    of maximal minors of the generic (p+1) x n matrix with weights d_i - 1.

    1 - sum_{k=0}^{n-p-1} (-1)^k sum_{i_0+...+i_p=k} C(n, p+k+1)
        * t^{sum_j (i_j + 1)(d_j - 1)}
    """
    n, p, degs = shape.n, shape.p, shape.degrees
    acc = ZPoly1((1,))
    for k in range(n - p):
        c = math.comb(n, p + k + 1)
        sign = -1 if k % 2 == 0 else 1   # the whole bracket enters with -1
        for comp in compositions(k, p + 1):
            e = sum((ij + 1) * (d - 1) for ij, d in zip(comp, degs))
            acc = acc + ZPoly1.term(sign * c, e)
    return acc


def degree_of_regularity(shape):
    """(n-p-1) max(d_i - 1) - n - p + d0 + 2 sum_{i>=1} d_i."""
    n, p, degs = shape.n, shape.p, shape.degrees
    return ((n - p - 1) * shape.max_dminus1 - n - p + degs[0]
            + 2 * sum(degs[1:]))


def witness_degree_bound(shape):
    """Upper bound on the witness degree; coincides with the degree of
    regularity of the generic top-degree system."""
    return degree_of_regularity(shape)


def default_truncation(shape):
    # every consumer (Macaulay sizing, plateau detection) fits inside this
    return witness_degree_bound(shape) + shape.n + 2


def hs_determinantal(shape):
    """Weighted Hilbert series of the generic maximal-minors ideal.

    For d0 = 1 the numerator is still well-defined but the series has
    (1 - t^0) denominator factors; expansion then raises
    DegenerateSeriesError.
    """
    num = determinantal_numerator(shape)
    den = [(d - 1, shape.n) for d in shape.degrees]
    return RationalSeries(num, den, default_truncation(shape))


def hs_critical(shape):
    """Hilbert series (a polynomial) of the generic critical-point ideal of
    a top-degree system: the determinantal series times
    (1-t^{d0-1})^n prod (1-t^{d_i})(1-t^{d_i-1})^n / (1-t)^n.

    The (1-t^{d_i-1})^n factors cancel against the determinantal
    denominator, so the computation never divides by a zero factor even
    when d0 = 1.
    """
    num = determinantal_numerator(shape)
    for d in shape.degrees[1:]:
        num = num * ZPoly1.one_minus_tpow(d)
    cap = max(4 * shape.n * max(shape.degrees), (num.degree() or 0) + shape.n + 2)
    series = RationalSeries(num, [(1, shape.n)], cap)
    hs = series.expand_polynomial(window=shape.n + 1)
    if any(c < 0 for c in hs.coeffs):
        raise NonPolynomialError("Hilbert series has a negative coefficient")
    return hs


def algebraic_degree(shape):
    """prod d_i * sum over compositions i_0+...+i_p = n-p of
    (d_0-1)^{i_0} ... (d_p-1)^{i_p}  (0^0 = 1)."""
    n, p, degs = shape.n, shape.p, shape.degrees
    total = 0
    for comp in compositions(n - p, p + 1):
        total += math.prod((d - 1) ** ij for ij, d in zip(comp, degs))
    return math.prod(degs[1:]) * total


@dataclass(frozen=True)
class ComplexityProfile:
    """Complexity indicators of a shape: averages, degree, regularity."""

    shape: object
    A: Fraction                 # arithmetic average, exact
    G_pow: int                  # G = G_pow ** (1/G_root), exact pair
    G_root: int
    delta: int
    dreg: int
    dwit_bound: int

    @property
    def G(self):
        return self.G_pow ** (1.0 / self.G_root)

    @property
    def log_ratio(self):
        """log(A)/log(G) as a float."""
        return float(math.log(self.A) / (math.log(self.G_pow) / self.G_root))


def averages(shape):
    """Arithmetic/geometric averages of the degree multiset
    {d_1..d_p, max(d_i - 1) repeated n - p times}, with delta and the
    degree bounds bundled in."""
    n, p, degs = shape.n, shape.p, shape.degrees
    m = shape.max_dminus1
    A = Fraction((n - p) * m + sum(degs[1:]), n)
    G_pow = m ** (n - p) * math.prod(degs[1:])
    return ComplexityProfile(
        shape=shape, A=A, G_pow=G_pow, G_root=n,
        delta=algebraic_degree(shape),
        dreg=degree_of_regularity(shape),
        dwit_bound=witness_degree_bound(shape))


def hs_homogenized(shape):
    """Hilbert series after homogenization: hs_critical / (1 - t).

    Coefficients are the partial sums of hs_critical and plateau at the
    algebraic degree.
    """
    return RationalSeries(hs_critical(shape), [(1, 1)], default_truncation(shape))
