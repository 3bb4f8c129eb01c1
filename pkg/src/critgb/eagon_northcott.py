"""Eagon-Northcott complex of the generic (p+1) x n matrix of U variables.

The complex resolves the ideal of maximal minors over Z[U] with the weighted
grading wdeg(U_{i,j}) = d_i - 1.  Stage k >= 1 is the free module

    (Sym_{k-1} G)* tensor wedge^{p+k} F,   F = R^n, G = R^{p+1},

with one generator per (column subset S, exponent vector m with |m| = k-1)
and shift s + sum_j m_j (d_j - 1), s = sum_j (d_j - 1).  The differentials
are the contraction maps; their alternating shift sum reproduces the
Hilbert-series numerator.

Basis orderings: column subsets sorted lexicographically; Sym* exponent
vectors of degree k-1 on p+1 letters in lexicographic order; stage-k basis
pairs (S, m) with S outer.  Entry signs come from the position parity of the
removed column inside S.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .series import compositions
from .zpoly import ZPoly1, zmv_add, zmv_mul, zmv_sub, zmv_weighted_degrees
from .errors import ShapeError

MAX_N = 7  # size guard for the symbolic construction


@dataclass(frozen=True)
class GradedFreeModule:
    """Free module described by the multiset of its generator shifts."""

    shifts: tuple

    @property
    def rank(self):
        return len(self.shifts)


@dataclass
class GradedComplex:
    """Modules, differentials and basis labels of the constructed complex."""

    shape: object
    nvars: int                   # number of U variables, (p+1) * n
    weights: tuple               # weight of each U variable
    modules: list                # GradedFreeModule per stage, stage 0 first
    differentials: list          # differentials[k]: stage k+1 -> stage k matrix
    bases: list                  # per stage: list of (subset, sym_exponents)

    def ranks(self):
        return tuple(mod.rank for mod in self.modules)


def _u_index(shape, r, j):
    """Flat variable index of U_{r,j} (rows r = 0..p, columns j = 0..n-1)."""
    return r * shape.n + j


def _u_poly(shape, r, j, sign=1):
    m = [0] * ((shape.p + 1) * shape.n)
    m[_u_index(shape, r, j)] = 1
    return {tuple(m): sign}


def _stage_bases(shape):
    """Basis labels per stage: stage 0 is [((), ())]; stage k >= 1 pairs
    every (p+k)-subset of columns with every Sym exponent vector of degree
    k - 1."""
    n, p = shape.n, shape.p
    bases = [[((), ())]]
    for k in range(1, n - p + 1):
        subsets = list(itertools.combinations(range(n), p + k))
        syms = sorted(compositions(k - 1, p + 1))
        bases.append([(S, m) for S in subsets for m in syms])
    return bases


def _shift(shape, k, sym):
    s = sum(d - 1 for d in shape.degrees)
    return s + sum(ij * (d - 1) for ij, d in zip(sym, shape.degrees))


def _symbolic_minor(shape, cols):
    """det of the (p+1) x (p+1) block of the generic U matrix on ``cols``,
    expanded along the first row (memo-free; sizes are tiny)."""
    rows = list(range(shape.p + 1))

    def det(r, cs):
        if len(cs) == 1:
            return _u_poly(shape, rows[r], cs[0])
        acc = {}
        for l, j in enumerate(cs):
            sub = det(r + 1, cs[:l] + cs[l + 1:])
            term = zmv_mul(_u_poly(shape, rows[r], j), sub)
            acc = zmv_add(acc, term) if l % 2 == 0 else zmv_sub(acc, term)
        return acc

    return det(0, tuple(cols))


def build_complex(shape):
    """Construct modules, shifts and differential matrices for the shape."""
    n, p = shape.n, shape.p
    if n > MAX_N:
        raise ShapeError(f"n={n} exceeds the symbolic-complex guard ({MAX_N})")
    bases = _stage_bases(shape)
    modules = [GradedFreeModule((0,))]
    for k in range(1, n - p + 1):
        modules.append(GradedFreeModule(
            tuple(-_shift(shape, k, m) for _, m in bases[k])))

    differentials = []
    # stage 1 -> stage 0: generator e_S maps to the minor on columns S
    sigma1 = [[_symbolic_minor(shape, S) for S, _ in bases[1]]]
    differentials.append(sigma1)
    # stage k -> stage k-1 for k >= 2: contraction
    for k in range(2, n - p + 1):
        src, dst = bases[k], bases[k - 1]
        index = {lab: i for i, lab in enumerate(dst)}
        mat = [[{} for _ in src] for _ in dst]
        for col, (S, m) in enumerate(src):
            for l, j in enumerate(S):
                sign = 1 if l % 2 == 0 else -1
                Sm = S[:l] + S[l + 1:]
                for r in range(p + 1):
                    if m[r] == 0:
                        continue
                    mm = m[:r] + (m[r] - 1,) + m[r + 1:]
                    row = index[(Sm, mm)]
                    mat[row][col] = zmv_add(mat[row][col],
                                            _u_poly(shape, r, j, sign))
        differentials.append(mat)

    weights = tuple(d - 1 for d in shape.degrees for _ in range(n))
    return GradedComplex(shape=shape, nvars=(p + 1) * n, weights=weights,
                         modules=modules, differentials=differentials,
                         bases=bases)


@dataclass
class ComplexReport:
    """Outcome of verify_complex."""

    ranks: tuple
    is_complex: bool = True
    homogeneous: bool = True
    image_is_minors: bool = True
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return self.is_complex and self.homogeneous and self.image_is_minors


def verify_complex(cx):
    """Check sigma_{k-1} o sigma_k = 0, graded homogeneity of every entry,
    and that stage 1 maps onto the maximal minors."""
    report = ComplexReport(ranks=cx.ranks())
    shape = cx.shape

    # consecutive composites vanish
    for k in range(1, len(cx.differentials)):
        a, b = cx.differentials[k - 1], cx.differentials[k]  # sigma_k, sigma_{k+1}
        rows, mid, cols = len(a), len(b), len(b[0])
        for i in range(rows):
            for j in range(cols):
                acc = {}
                for l in range(mid):
                    if a[i][l] and b[l][j]:
                        acc = zmv_add(acc, zmv_mul(a[i][l], b[l][j]))
                if acc:
                    report.is_complex = False
                    report.failures.append(
                        f"sigma_{k}.sigma_{k + 1} nonzero at ({i},{j})")

    # homogeneity: entry degree must equal shift(col) - shift(row)
    for k, mat in enumerate(cx.differentials, start=1):
        down = cx.modules[k - 1].shifts
        up = cx.modules[k].shifts
        for i, row in enumerate(mat):
            for j, entry in enumerate(row):
                if not entry:
                    continue
                degs = zmv_weighted_degrees(entry, cx.weights)
                want = (-up[j]) - (-down[i])
                if degs != {want}:
                    report.homogeneous = False
                    report.failures.append(
                        f"sigma_{k} entry ({i},{j}) not homogeneous of degree {want}")

    # stage-1 image is exactly the set of maximal minors
    minors = [_symbolic_minor(shape, S) for S in
              itertools.combinations(range(shape.n), shape.p + 1)]
    got = list(cx.differentials[0][0])
    if got != minors:
        report.image_is_minors = False
        report.failures.append("stage-1 image differs from the maximal minors")
    return report


def stage_rank(shape, k):
    """C(n, p+k) * C(p+k-1, k-1) for k >= 1; 1 for k = 0."""
    if k == 0:
        return 1
    return math.comb(shape.n, shape.p + k) * math.comb(shape.p + k - 1, k - 1)


def alternating_numerator(shape):
    """Hilbert-series numerator as the alternating sum of shifted stage
    contributions: stage k enters with sign (-1)^k."""
    acc = ZPoly1((1,))
    for k in range(1, shape.n - shape.p + 1):
        sign = -1 if k % 2 == 1 else 1
        c = math.comb(shape.n, shape.p + k)
        for m in compositions(k - 1, shape.p + 1):
            acc = acc + ZPoly1.term(sign * c, _shift(shape, k, m))
    return acc
