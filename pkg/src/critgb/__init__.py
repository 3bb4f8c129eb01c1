"""critgb: exact critical-point ideals over GF(p).

Builds the generator set (constraints + maximal Jacobian minors) of a
polynomial optimization problem, solves it through the Macaulay matrix ->
grevlex -> FGLM -> lex pipeline, and cross-checks the structural formulas
(Hilbert series, degree of regularity, algebraic degree, Eagon-Northcott
resolution, Grothendieck K-polynomials) against brute-force oracles.
"""

from .algebra import (GREVLEX, LEX, Grading, MonomialOrder, Polynomial,
                      PrimeField, Ring, compare, format_poly, parse_poly)
from .kernels import BACKEND
from .systems import (CriticalSystem, GeneratorSet, ProblemShape,
                      critical_generators, highest_system, homogenize,
                      jacobian, maximal_minors, random_instance,
                      read_instance, write_instance)
from .series import (ComplexityProfile, RationalSeries, algebraic_degree,
                     averages, degree_of_regularity, hs_critical,
                     hs_determinantal, hs_homogenized, witness_degree_bound)
from .groebner import (GroebnerBasis, buchberger, fglm, hilbert_bruteforce,
                       multiplication_tables, normal_form, quotient_dimension)
from .macaulay import (MacaulayMatrix, SolveResult, build_macaulay,
                       dwit_empirical, extract_basis, row_echelon, solve)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ComplexityProfile", "CriticalSystem", "GREVLEX",
    "GeneratorSet", "Grading", "GroebnerBasis", "LEX", "MacaulayMatrix",
    "MonomialOrder", "Polynomial", "PrimeField", "ProblemShape",
    "RationalSeries", "Ring", "SolveResult", "algebraic_degree", "averages",
    "buchberger", "build_macaulay", "compare", "critical_generators",
    "degree_of_regularity", "dwit_empirical", "extract_basis", "fglm",
    "format_poly", "highest_system", "hilbert_bruteforce", "homogenize",
    "hs_critical", "hs_determinantal", "hs_homogenized", "jacobian",
    "maximal_minors", "multiplication_tables", "normal_form", "parse_poly",
    "quotient_dimension", "random_instance", "read_instance", "row_echelon",
    "solve", "witness_degree_bound", "write_instance",
]
