"""Macaulay-matrix solving pipeline.

Builds the coefficient matrix of all monomial multiples of the generators up
to a degree bound, row-reduces it over GF(p), and reads a reduced grevlex
Groebner basis off the result.  At (or above) the witness degree of the
system this basis generates the critical-point ideal; the extraction step
certifies success with the Buchberger criterion and reports an
insufficient-degree error otherwise, which drives the retry policy in
``solve`` and the upward scan in ``dwit_empirical``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import GREVLEX, Polynomial, monomials_upto
from .errors import GenericityError, InsufficientDegreeError
from .groebner import (GroebnerBasis, check_buchberger_criterion, finalize_basis,
                       normal_form, _entry_from_poly)
from .kernels import rref
from .series import witness_degree_bound
from .systems import GeneratorSet, critical_generators


@dataclass
class MacaulayMatrix:
    """Rows are mu * k for generators k and monomial multipliers mu with
    deg(mu * k) <= degree; columns are all monomials of degree <= degree in
    descending grevlex order."""

    ring: object
    degree: int
    generators: tuple
    row_labels: tuple          # (generator index, multiplier monomial)
    columns: tuple             # monomials, descending grevlex
    data: np.ndarray           # int64 residues, shape (rows, columns)
    reduced: bool = False
    pivots: tuple = ()

    @property
    def shape(self):
        return self.data.shape

    def row_poly(self, i):
        """The polynomial a row encodes."""
        terms = {}
        for j in np.nonzero(self.data[i])[0]:
            terms[self.columns[int(j)]] = int(self.data[i, int(j)])
        return Polynomial(self.ring, terms)


def _as_generators(gens):
    if isinstance(gens, GeneratorSet):
        return gens.polynomials()
    return tuple(gens)


def build_macaulay(gens, d):
    """Assemble the degree-d Macaulay matrix of a generator set.

    Rows are ordered by (generator index, multiplier descending grevlex);
    generators of degree above d contribute no rows; an entirely empty
    matrix is an error.
    """
    polys = _as_generators(gens)
    if not polys or all(g.is_zero() for g in polys):
        raise ValueError("generator set is empty")
    ring = polys[0].ring
    if set(ring.grading.weights) != {1}:
        raise ValueError("Macaulay matrices are built over the canonical grading")
    key = GREVLEX.key
    columns = sorted(monomials_upto(ring.nvars, d),
                     key=lambda m: key(ring, m), reverse=True)
    col_index = {m: i for i, m in enumerate(columns)}
    labels = []
    rows = []
    mmul = ring.mmul
    for gi, g in enumerate(polys):
        if g.is_zero():
            continue
        dg = g.degree()
        if dg > d:
            continue
        multipliers = sorted(monomials_upto(ring.nvars, d - dg),
                             key=lambda m: key(ring, m), reverse=True)
        for mu in multipliers:
            row = np.zeros(len(columns), dtype=np.int64)
            for m, c in g.terms.items():
                row[col_index[mmul(mu, m)]] = c
            labels.append((gi, mu))
            rows.append(row)
    if not rows:
        raise ValueError(f"degree {d} is below every generator degree")
    assert len(rows) <= len(polys) * len(columns), \
        "row count exceeds (#generators) * C(n+d, n)"
    data = np.stack(rows)
    return MacaulayMatrix(ring=ring, degree=d, generators=polys,
                          row_labels=tuple(labels), columns=tuple(columns),
                          data=data)


def row_echelon(M):
    """Reduced row echelon form over GF(p); zero rows are dropped.

    The result is the canonical form of the row space, so it does not
    depend on the input row order or on the kernel backend.
    """
    data = M.data.copy()
    p = M.ring.field.p
    rank, pivots = rref(data, p, True)
    return MacaulayMatrix(ring=M.ring, degree=M.degree, generators=M.generators,
                          row_labels=M.row_labels, columns=M.columns,
                          data=data[:rank], reduced=True, pivots=tuple(pivots))


def extract_basis(M):
    """Reduced monic grevlex basis from a reduced Macaulay matrix.

    Keeps the rows whose leading monomial is not a multiple of another
    row's leading monomial and interreduces them.  The candidate is
    certified two ways: every S-polynomial must reduce to zero (Buchberger
    criterion) and every generator of the ideal must reduce to zero against
    the candidate (so the candidate generates the full ideal, not the
    fragment visible at this degree).  Failure of either check raises
    InsufficientDegreeError: the matrix degree is below the witness degree.
    """
    if not M.reduced:
        raise ValueError("extract_basis needs a reduced matrix")
    ring = M.ring
    p = ring.field.p
    mdivides = ring.mdivides
    key = GREVLEX.key
    # ascending scan: a minimal leading monomial can only be divided by an
    # already-kept (smaller) one
    order_idx = sorted(range(len(M.pivots)),
                       key=lambda i: key(ring, M.columns[M.pivots[i]]))
    kept = []
    kept_lms = []
    for i in order_idx:
        lm = M.columns[M.pivots[i]]
        if not any(mdivides(other, lm) for other in kept_lms):
            kept.append(i)
            kept_lms.append(lm)
    entries = [_entry_from_poly(M.row_poly(i), GREVLEX, p) for i in kept]
    basis = finalize_basis(entries, ring, GREVLEX, p)
    for gi, g in enumerate(M.generators):
        if not g.is_zero() and not normal_form(g, basis).is_zero():
            raise InsufficientDegreeError(M.degree, ("generator", gi))
    bad = check_buchberger_criterion(basis, GREVLEX)
    if bad is not None:
        raise InsufficientDegreeError(M.degree, bad)
    return basis


@dataclass(frozen=True)
class SolveResult:
    basis: GroebnerBasis
    degree: int      # Macaulay degree at which extraction succeeded


def solve(sys, max_extra=None):
    """Grevlex Groebner basis of the critical-point ideal of the system.

    Builds at the witness-degree bound of the shape; on an
    insufficient-degree failure retries one degree higher, up to bound + n,
    then reports a genericity failure (the caller resamples).
    """
    gens = critical_generators(sys)
    bound = witness_degree_bound(sys.shape)
    gdegs = [g.degree() for g in gens.polynomials() if not g.is_zero()]
    if not gdegs:
        raise GenericityError("every generator vanished; degenerate instance")
    start = max([bound] + gdegs)
    extra = sys.shape.n if max_extra is None else max_extra
    last = None
    for d in range(start, start + extra + 1):
        try:
            basis = extract_basis(row_echelon(build_macaulay(gens, d)))
            return SolveResult(basis=basis, degree=d)
        except InsufficientDegreeError as exc:
            last = exc
    raise GenericityError(
        f"no Groebner basis up to degree {start + extra} "
        f"(bound {bound}); instance looks non-generic") from last


def dwit_empirical(sys, max_extra=None):
    """Smallest Macaulay degree at which extraction succeeds, scanning
    upward from the largest generator degree."""
    gens = critical_generators(sys)
    start = max(g.degree() for g in gens.polynomials() if not g.is_zero())
    bound = witness_degree_bound(sys.shape)
    extra = sys.shape.n if max_extra is None else max_extra
    for d in range(start, bound + extra + 1):
        try:
            extract_basis(row_echelon(build_macaulay(gens, d)))
            return d
        except InsufficientDegreeError:
            continue
    raise GenericityError(
        f"no witness degree found up to {bound + extra}; "
        "instance looks non-generic")
