import random

import numpy as np
import pytest

from critgb.algebra import GREVLEX, LEX, Polynomial, parse_poly
from critgb.errors import PositiveDimensionError
from critgb.groebner import (buchberger,
                             check_buchberger_criterion, fglm,
                             hilbert_bruteforce, multiplication_tables,
                             normal_form, quotient_dimension, spolynomial,
                             staircase_from_lms)
from critgb.series import algebraic_degree, hs_critical
from critgb.systems import (ProblemShape, critical_generators, highest_system,
                            random_instance, x_ring)
from critgb.zpoly import ZPoly1


def P(text, ring):
    return parse_poly(text, ring)


class TestNormalForm:
    def test_multiple_reduces_to_zero(self):
        r = x_ring(2)
        assert normal_form(P("X1^2", r), [P("X1", r)]).is_zero()

    def test_partial_reduction(self):
        r = x_ring(2)
        assert normal_form(P("X1^2 + X2", r), [P("X2", r)]) == P("X1^2", r)

    def test_idempotent(self):
        rng = random.Random(0)
        r = x_ring(2)
        basis = [P("X1^2 - X2", r), P("X2^2 - 1", r)]
        for _ in range(20):
            f = Polynomial(r, {(rng.randrange(5), rng.randrange(5)):
                               rng.randrange(65521) for _ in range(6)})
            nf = normal_form(f, basis)
            assert normal_form(nf, basis) == nf

    def test_difference_in_ideal(self):
        # f - NF(f) must reduce to zero
        r = x_ring(2)
        basis = buchberger([P("X1^2 + X2^2 - 1", r), P("2*X2", r)])
        f = P("X1^3*X2 + X1 + 5", r)
        nf = normal_form(f, basis)
        assert normal_form(f - nf, basis).is_zero()

    def test_lex_order(self):
        r = x_ring(2)
        nf = normal_form(P("X1^2", r), [P("X1 - X2", r)], order=LEX)
        assert nf == P("X2^2", r)


class TestSPolynomial:
    def test_lead_terms_cancel(self):
        r = x_ring(2)
        f = P("X1^2 + X2", r)
        g = P("X1*X2 + 1", r)
        s = spolynomial(f, g)
        assert s == P("X2^2 - X1", r)


class TestBuchberger:
    def test_already_a_basis(self):
        r = x_ring(2)
        gb = buchberger([P("X1", r), P("X2", r)])
        assert list(gb) == [P("X2", r), P("X1", r)]

    def test_running_example(self):
        r = x_ring(2)
        gb = buchberger([P("X1^2 + X2^2 - 1", r), P("2*X2", r)])
        assert list(gb) == [P("X2", r), P("X1^2 - 1", r)]

    def test_lex_small(self):
        r = x_ring(2)
        gb = buchberger([P("X1^2 + X2^2 - 1", r), P("X1", r)], LEX)
        assert list(gb) == [P("X2^2 - 1", r), P("X1", r)]

    def test_random_critical_system_staircase(self):
        sysm = random_instance(ProblemShape(3, 1, (3, 2)), seed=3)
        gb = buchberger(list(critical_generators(sysm).polynomials()))
        assert quotient_dimension(gb) == 14

    def test_criterion_holds_on_output(self):
        for seed in range(3):
            sysm = random_instance(ProblemShape(3, 1, (2, 2)), seed=seed)
            gb = buchberger(list(critical_generators(sysm).polynomials()))
            assert check_buchberger_criterion(gb) is None

    def test_basis_is_reduced_and_monic(self):
        sysm = random_instance(ProblemShape(3, 1, (2, 2)), seed=5)
        gb = buchberger(list(critical_generators(sysm).polynomials()))
        lms = gb.leading_monomials()
        for i, g in enumerate(gb):
            assert g.leading(GREVLEX)[1] == 1
            for m in g.terms:
                divisors = [lm for j, lm in enumerate(lms)
                            if j != i and gb.ring.mdivides(lm, m)]
                assert not divisors
        # no leading monomial divides another
        for i, a in enumerate(lms):
            for j, b in enumerate(lms):
                if i != j:
                    assert not gb.ring.mdivides(a, b)


class TestStaircase:
    def test_small(self):
        r = x_ring(2)
        std = staircase_from_lms(r, [(0, 1), (2, 0)])
        assert std == ((0, 0), (1, 0))

    def test_unit_ideal(self):
        r = x_ring(2)
        assert staircase_from_lms(r, [(0, 0)]) == ()

    def test_positive_dimension(self):
        r = x_ring(2)
        with pytest.raises(PositiveDimensionError):
            staircase_from_lms(r, [(1, 0)], cap=50)


class TestHilbertBruteforce:
    def test_two_variables_full_ideal(self):
        r = x_ring(2)
        assert hilbert_bruteforce([P("X1", r), P("X2", r)]) == ZPoly1([1])

    def test_univariate_square(self):
        r = x_ring(1)
        assert hilbert_bruteforce([P("X1^2", r)]) == ZPoly1([1, 1])

    def test_random_highest_system(self):
        shape = ProblemShape(3, 1, (3, 2))
        sysm = random_instance(shape, seed=3)
        top = highest_system(sysm)
        hs = hilbert_bruteforce(list(critical_generators(top).polynomials()))
        assert hs == hs_critical(shape) == ZPoly1([1, 3, 5, 4, 1])

    def test_methods_agree(self):
        shape = ProblemShape(3, 1, (2, 2))
        sysm = random_instance(shape, seed=1)
        top = highest_system(sysm)
        gens = list(critical_generators(top).polynomials())
        assert hilbert_bruteforce(gens, method="both") == hs_critical(shape)

    def test_rejects_inhomogeneous(self):
        r = x_ring(2)
        with pytest.raises(ValueError):
            hilbert_bruteforce([P("X1^2 - 1", r)])


class TestMultiplicationTables:
    def test_size_and_commutativity(self):
        shape = ProblemShape(3, 1, (2, 2))
        sysm = random_instance(shape, seed=2)
        gb = buchberger(list(critical_generators(sysm).polynomials()))
        std, tables = multiplication_tables(gb)
        delta = len(std)
        assert delta == algebraic_degree(shape)
        p = gb.ring.field.p
        for i in range(len(tables)):
            assert tables[i].shape == (delta, delta)
            for j in range(i + 1, len(tables)):
                a = (tables[i] @ tables[j]) % p
                b = (tables[j] @ tables[i]) % p
                assert np.array_equal(a, b), (i, j)

    def test_columns_are_normal_forms(self):
        r = x_ring(2)
        gb = buchberger([P("X1^2 + X2^2 - 1", r), P("2*X2", r)])
        std, tables = multiplication_tables(gb)
        assert std == ((0, 0), (1, 0))
        # X1 * X1 = 1 in the quotient, X1 * 1 = X1, X2 * anything = 0
        assert np.array_equal(tables[0], np.array([[0, 1], [1, 0]]))
        assert np.array_equal(tables[1], np.zeros((2, 2), dtype=np.int64))


class TestFGLM:
    def test_already_triangular(self):
        r = x_ring(2)
        gb = buchberger([P("X1^2 + X2^2 - 1", r), P("2*X2", r)])
        lex_gb = fglm(gb)
        assert lex_gb.order == LEX
        assert list(lex_gb) == [P("X2", r), P("X1^2 - 1", r)]

    def test_shape_position_univariate_degree(self):
        shape = ProblemShape(3, 1, (2, 2))
        delta = algebraic_degree(shape)
        assert delta == 6
        found = False
        for seed in range(5):
            sysm = random_instance(shape, seed=seed)
            gb = buchberger(list(critical_generators(sysm).polynomials()))
            lex_gb = fglm(gb)
            assert quotient_dimension(lex_gb) == quotient_dimension(gb)
            univ = [g for g in lex_gb
                    if all(e == 0 for m in g.terms for e in m[:-1])]
            if univ and univ[0].degree() == delta:
                found = True
                break
        assert found, "no instance in shape position"

    def test_lex_basis_is_groebner(self):
        sysm = random_instance(ProblemShape(2, 1, (2, 2)), seed=1)
        gb = buchberger(list(critical_generators(sysm).polynomials()))
        lex_gb = fglm(gb)
        assert check_buchberger_criterion(lex_gb, LEX) is None
        # same ideal: cross-reduction to zero both ways
        for g in lex_gb:
            assert normal_form(g, gb).is_zero()
        for g in gb:
            assert normal_form(g, lex_gb, order=LEX).is_zero()

    def test_trivial_ideal(self):
        r = x_ring(2)
        gb = buchberger([P("X1", r), P("X2", r), P("1", r)])
        assert gb.is_trivial()
        lex_gb = fglm(gb)
        assert lex_gb.is_trivial()
        assert quotient_dimension(lex_gb) == 0

    def test_agrees_with_direct_lex_buchberger(self):
        # the lex basis computed by linear algebra must equal the one
        # computed by running Buchberger in the lex order directly
        for shape, seeds in [(ProblemShape(2, 1, (2, 2)), range(4)),
                             (ProblemShape(3, 1, (2, 2)), range(3)),
                             (ProblemShape(2, 1, (1, 3)), range(3))]:
            for seed in seeds:
                sysm = random_instance(shape, seed=seed)
                gens = list(critical_generators(sysm).polynomials())
                grev = buchberger(gens, GREVLEX)
                direct = buchberger(gens, LEX)
                assert fglm(grev) == direct, (shape.label(), seed)


class TestQuotientDimension:
    def test_running_example(self):
        r = x_ring(2)
        gb = buchberger([P("X1^2 + X2^2 - 1", r), P("2*X2", r)])
        assert quotient_dimension(gb) == 2

    def test_golden_shape(self):
        sysm = random_instance(ProblemShape(3, 1, (3, 2)), seed=4)
        gb = buchberger(list(critical_generators(sysm).polynomials()))
        assert quotient_dimension(gb) == 14

    def test_quadratic_formula(self):
        sysm = random_instance(ProblemShape(4, 2, (2, 2, 2)), seed=0)
        gb = buchberger(list(critical_generators(sysm).polynomials()))
        assert quotient_dimension(gb) == 24   # 2^2 * C(4,2)

    def test_positive_dimension_error(self):
        r = x_ring(2)
        gb = buchberger([P("X1", r)])
        with pytest.raises(PositiveDimensionError):
            quotient_dimension(gb, cap=100)
