"""Critical-point systems: Jacobians, maximal minors, homogenization, instances.

For an objective q and constraints F = (f_1, ..., f_p) over GF(p), the
critical-point ideal is generated by F together with the maximal minors of
the (p+1) x n Jacobian of (q, F).  This module builds those generators,
random generic instances, and the homogenized / top-degree variants used by
the structural cross-checks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .algebra import (Grading, Polynomial, PrimeField, Ring, format_poly,
                      monomials_exact, monomials_upto, parse_poly)
from .errors import DimensionError, ParseError, ShapeError


@dataclass(frozen=True)
class ProblemShape:
    """Variable count n, constraint count p < n, degrees (d0, d1, ..., dp)."""

    n: int
    p: int
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if self.p < 1 or self.p >= self.n:
            raise ShapeError(f"need 1 <= p < n, got p={self.p}, n={self.n}")
        if len(self.degrees) != self.p + 1:
            raise ShapeError("degrees must list (d0, d1, ..., dp)")
        if self.degrees[0] < 1:
            raise ShapeError("objective degree d0 must be >= 1")
        if any(d < 2 for d in self.degrees[1:]):
            raise ShapeError("constraint degrees must be >= 2")

    @property
    def d0(self):
        return self.degrees[0]

    @property
    def max_dminus1(self):
        return max(d - 1 for d in self.degrees)

    @property
    def minor_count(self):
        import math
        return math.comb(self.n, self.p + 1)

    def label(self):
        return f"n={self.n},p={self.p},d=({','.join(map(str, self.degrees))})"


def x_ring(n, field=None, names=None):
    """The solving ring GF(p)[X1..Xn] with the canonical grading."""
    return Ring(n, field=field, names=names)


class CriticalSystem:
    """An objective/constraints pair with its shape and coefficient field."""

    __slots__ = ("shape", "ring", "q", "constraints")

    def __init__(self, shape, ring, q, constraints):
        if ring.nvars not in (shape.n, shape.n + 1):
            raise DimensionError("ring must have n (or n+1, homogenized) variables")
        if q.ring != ring or any(f.ring != ring for f in constraints):
            raise DimensionError("system polynomials must share the ring")
        if len(constraints) != shape.p:
            raise ShapeError("constraint count != p")
        if q.is_zero() or (q.degree() or 0) > shape.d0:
            raise ShapeError("objective must be nonzero of degree <= d0")
        for f, d in zip(constraints, shape.degrees[1:]):
            if f.is_zero() or f.degree() > d:
                raise ShapeError("constraint degree exceeds its bound")
        self.shape = shape
        self.ring = ring
        self.q = q
        self.constraints = tuple(constraints)

    @property
    def field(self):
        return self.ring.field

    def polynomials(self):
        return (self.q,) + self.constraints

    def __eq__(self, other):
        return (isinstance(other, CriticalSystem) and other.shape == self.shape
                and other.ring == self.ring and other.q == self.q
                and other.constraints == self.constraints)

    def __repr__(self):
        return f"CriticalSystem({self.shape.label()})"


@dataclass(frozen=True)
class GeneratorSet:
    """Constraints plus the maximal minors of the Jacobian; generates the ideal."""

    constraints: tuple
    minors: tuple

    def polynomials(self):
        """Generators in Macaulay row order: constraints first, then minors."""
        return self.constraints + self.minors


def jacobian(sys):
    """(p+1) x n matrix of formal partials; row 0 is the gradient of q."""
    n = sys.shape.n
    rows = [[f.diff(j) for j in range(n)] for f in sys.polynomials()]
    return rows


def maximal_minors(matrix, k):
    """All k x k minors of a k-row matrix, one per k-subset of columns.

    Subsets are enumerated in lexicographic order of sorted column indices;
    each determinant is expanded along the first row (Laplace), memoized on
    (row, column-subset) so shared cofactors are computed once.
    """
    if not matrix or len(matrix) != k:
        raise DimensionError(f"need exactly {k} rows")
    ncols = len(matrix[0])
    if k > ncols:
        raise DimensionError("minor size exceeds column count")
    ring = matrix[0][0].ring
    memo = {}

    def det(row, cols):
        if row == k - 1:
            return matrix[row][cols[0]]
        key = (row, cols)
        got = memo.get(key)
        if got is not None:
            return got
        acc = Polynomial.zero(ring)
        for l, j in enumerate(cols):
            entry = matrix[row][j]
            if entry.is_zero():
                continue
            rest = cols[:l] + cols[l + 1:]
            sub = det(row + 1, rest)
            term = entry * sub
            acc = acc + term if l % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    return [det(0, cols) for cols in itertools.combinations(range(ncols), k)]


def critical_generators(sys):
    """Generator set of the critical-point ideal of (q, F)."""
    jac = jacobian(sys)
    minors = maximal_minors(jac, sys.shape.p + 1)
    return GeneratorSet(constraints=sys.constraints, minors=tuple(minors))


# -- homogenization ---------------------------------------------------------

def homogenized_ring(ring):
    """Extend GF(p)[X1..Xn] by a degree-1 homogenization variable H (last)."""
    return Ring(ring.nvars + 1, field=ring.field, names=ring.names + ("H",))


def homogenize_poly(f, ring_h):
    """f^h = H^deg(f) * f(X1/H, ..., Xn/H)."""
    if f.is_zero():
        return Polynomial.zero(ring_h)
    d = f.degree()
    return Polynomial(ring_h, {m + (d - sum(m),): c for m, c in f.terms.items()})


def dehomogenize_poly(fh, ring):
    """Set H = 1; inverse of homogenize_poly on homogenized input."""
    acc = {}
    p = ring.field.p
    for m, c in fh.terms.items():
        mm = m[:-1]
        acc[mm] = (acc.get(mm, 0) + c) % p
    return Polynomial(ring, acc)


def homogenize(sys):
    """Componentwise homogenization, over n+1 variables (X1..Xn, H)."""
    ring_h = homogenized_ring(sys.ring)
    return CriticalSystem(
        sys.shape, ring_h,
        homogenize_poly(sys.q, ring_h),
        tuple(homogenize_poly(f, ring_h) for f in sys.constraints))


def highest_system(sys):
    """(q^inf, f_1^inf, ..., f_p^inf): top-degree parts, componentwise."""
    return CriticalSystem(
        sys.shape, sys.ring,
        sys.q.highest_part(),
        tuple(f.highest_part() for f in sys.constraints))


def g_infinity_system(sys):
    """The auxiliary system U_{i,j} - d(f_i^inf)/dX_j, f_i^inf over GF(p)[U, X].

    U variables precede X variables.  They carry weight d_i - 1 when every
    d_i >= 2; for d0 = 1 the weight would be zero, so the extended ring falls
    back to the canonical grading (the polynomials are unchanged).
    """
    shape = sys.shape
    n, p = shape.n, shape.p
    top = highest_system(sys)
    unames = tuple(f"U{i}_{j + 1}" for i in range(p + 1) for j in range(n))
    if shape.d0 >= 2:
        weights = tuple(shape.degrees[i] - 1 for i in range(p + 1) for _ in range(n))
        grading = Grading(weights + (1,) * n)
    else:
        grading = Grading.standard((p + 1) * n + n)
    ext = Ring((p + 1) * n + n, field=sys.field, grading=grading,
               names=unames + sys.ring.names[:n])
    offset = (p + 1) * n

    def lift(f):
        return Polynomial(ext, {(0,) * offset + m: c for m, c in f.terms.items()})

    gs = []
    for i, f in enumerate(top.polynomials()):
        for j in range(n):
            u = Polynomial.variable(ext, i * n + j)
            gs.append(u - lift(f.diff(j)))
    gs.extend(lift(f) for f in top.constraints)
    return ext, gs


# -- random instances -------------------------------------------------------

def _dense_random(ring, d, rng, p):
    """Dense random polynomial of exact degree d (top block never all-zero)."""
    terms = {}
    top = monomials_exact(ring.nvars, d)
    for m in monomials_upto(ring.nvars, d):
        c = rng.randrange(p)
        if c:
            terms[m] = c
    while not any(terms.get(m) for m in top):
        for m in top:
            c = rng.randrange(p)
            if c:
                terms[m] = c
            elif m in terms:
                del terms[m]
    return Polynomial(ring, terms)


def random_instance(shape, field=None, seed=0):
    """Uniformly random dense system of exact degrees; deterministic per seed."""
    field = field if field is not None else PrimeField()
    ring = x_ring(shape.n, field=field)
    rng = random.Random(seed)
    q = _dense_random(ring, shape.d0, rng, field.p)
    fs = tuple(_dense_random(ring, d, rng, field.p) for d in shape.degrees[1:])
    return CriticalSystem(shape, ring, q, fs)


# -- instance files ---------------------------------------------------------

def write_instance(sys, path):
    lines = [
        f"prime {sys.field.p}",
        f"n {sys.shape.n}",
        f"p {sys.shape.p}",
        "degrees " + " ".join(map(str, sys.shape.degrees)),
        "q " + format_poly(sys.q),
    ]
    for i, f in enumerate(sys.constraints, start=1):
        lines.append(f"f{i} " + format_poly(f))
    text = "\n".join(lines) + "\n"
    with open(path, "w") as fh:
        fh.write(text)
    return text


def read_instance(path):
    with open(path) as fh:
        raw = fh.read()
    fields = {}
    for ln, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            key, rest = line.split(None, 1)
        except ValueError:
            raise ParseError(f"expected 'key value', got {line!r}", ln, 1)
        fields[key] = (rest.strip(), ln)
    for key in ("prime", "n", "p", "degrees", "q"):
        if key not in fields:
            raise ParseError(f"missing field {key!r}", len(raw.splitlines()) or 1)

    def as_int(key):
        text, ln = fields[key]
        try:
            return int(text)
        except ValueError:
            raise ParseError(f"field {key!r} must be an integer", ln, 1)

    prime, n, p = as_int("prime"), as_int("n"), as_int("p")
    dtext, dln = fields["degrees"]
    try:
        degrees = tuple(int(x) for x in dtext.replace(",", " ").split())
    except ValueError:
        raise ParseError("degrees must be integers", dln, 1)
    shape = ProblemShape(n, p, degrees)
    ring = x_ring(n, field=PrimeField(prime))
    qtext, qln = fields["q"]
    q = parse_poly(qtext, ring, line=qln)
    fs = []
    for i in range(1, p + 1):
        key = f"f{i}"
        if key not in fields:
            raise ParseError(f"missing constraint {key!r}", dln)
        ftext, fln = fields[key]
        fs.append(parse_poly(ftext, ring, line=fln))
    return CriticalSystem(shape, ring, q, tuple(fs))
