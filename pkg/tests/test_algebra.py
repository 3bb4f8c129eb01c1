import random

import pytest

from critgb.algebra import (GREVLEX, LEX, EQ, GT, LT, Grading, Polynomial,
                            PrimeField, Ring, compare, format_poly,
                            monomials_exact, monomials_upto, parse_poly)
from critgb.errors import DimensionError, ParseError


def ring2(p=65521):
    return Ring(2, field=PrimeField(p))


def P(text, ring):
    return parse_poly(text, ring)


class TestPrimeField:
    def test_inverse_of_one(self):
        assert PrimeField().inv(1) == 1

    def test_inverse_of_two(self):
        F = PrimeField()
        inv = F.inv(2)
        assert inv == 32761
        assert (2 * inv) % F.p == 1

    def test_inverse_of_zero_fails(self):
        with pytest.raises(ZeroDivisionError):
            PrimeField().inv(0)

    def test_random_inverses(self):
        F = PrimeField(101)
        for a in range(1, 101):
            assert (a * F.inv(a)) % 101 == 1

    @pytest.mark.parametrize("bad", [1, 2, 4, 91, 65536, 65537, 65521 * 2])
    def test_bad_moduli_rejected(self, bad):
        with pytest.raises(ValueError):
            PrimeField(bad)


class TestGrading:
    def test_standard(self):
        g = Grading.standard(3)
        assert g.weights == (1, 1, 1)
        assert g.degree((1, 2, 0)) == 3

    def test_weighted(self):
        g = Grading((2, 1, 1))
        assert g.degree((1, 1, 1)) == 4

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(ValueError):
            Grading((1, 0))


class TestCompare:
    def test_grevlex_same_degree(self):
        r = ring2()
        # X1^2 vs X1*X2: same degree, X1^2 has the smaller last exponent
        assert compare(r, (2, 0), (1, 1), GREVLEX) == GT

    def test_lex_ignores_degree(self):
        r = ring2()
        assert compare(r, (0, 3), (1, 0), LEX) == LT

    def test_grevlex_degree_first(self):
        r = ring2()
        assert compare(r, (1, 0), (0, 2), GREVLEX) == LT

    def test_equal(self):
        r = ring2()
        assert compare(r, (1, 1), (1, 1)) == EQ

    def test_dimension_mismatch(self):
        r = ring2()
        with pytest.raises(DimensionError):
            compare(r, (1, 0, 0), (0, 1), GREVLEX)

    @pytest.mark.parametrize("order", [GREVLEX, LEX])
    @pytest.mark.parametrize("weights", [(1, 1, 1), (2, 1, 3)])
    def test_order_axioms(self, order, weights):
        rng = random.Random(7)
        r = Ring(3, grading=Grading(weights))
        monos = [tuple(rng.randrange(5) for _ in range(3)) for _ in range(40)]
        one = r.one()
        for _ in range(300):
            a, b, c = rng.choice(monos), rng.choice(monos), rng.choice(monos)
            ab = compare(r, a, b, order)
            # totality + antisymmetry
            assert ab == -compare(r, b, a, order)
            assert (ab == EQ) == (a == b)
            # transitivity
            if ab <= 0 and compare(r, b, c, order) <= 0:
                assert compare(r, a, c, order) <= 0
            # multiplicativity
            if ab == LT:
                assert compare(r, r.mmul(a, c), r.mmul(b, c), order) == LT
            # 1 is minimal
            if a != one:
                assert compare(r, one, a, order) == LT

    @pytest.mark.parametrize("order", [GREVLEX, LEX])
    def test_encode_respects_order(self, order):
        rng = random.Random(3)
        r = Ring(4)
        monos = [tuple(rng.randrange(6) for _ in range(4)) for _ in range(60)]
        for a in monos:
            assert order.decode(r, order.encode(r, a)) == a
        for a in monos:
            for b in monos:
                ka = order.encode(r, a)
                kb = order.encode(r, b)
                assert compare(r, a, b, order) == (ka > kb) - (ka < kb)


class TestPolynomialArithmetic:
    def test_cancellation(self):
        r = ring2()
        p = r.field.p
        f = P("X1 + X2", r) + P("X2", r).scalar_mul(p - 1)
        assert f == P("X1", r)

    def test_product_of_conjugates(self):
        r = ring2()
        assert P("X1 + X2", r) * P("X1 - X2", r) == P("X1^2 - X2^2", r)

    def test_homogeneous_degrees_add(self):
        r = ring2()
        f = P("X1^2 + X1*X2", r)
        g = P("X1 + X2", r)
        h = f * g
        assert f.is_homogeneous and g.is_homogeneous and h.is_homogeneous
        assert h.degree() == f.degree() + g.degree()

    def test_ring_mismatch(self):
        with pytest.raises(DimensionError):
            P("X1", ring2()) + Polynomial.variable(Ring(3), 0)

    def test_ring_axioms_random(self):
        rng = random.Random(11)
        r = ring2()

        def rand_poly():
            return Polynomial(r, {(rng.randrange(4), rng.randrange(4)):
                                  rng.randrange(r.field.p) for _ in range(5)})

        for _ in range(60):
            a, b, c = rand_poly(), rand_poly(), rand_poly()
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
            assert a * b == b * a

    def test_sorted_terms_degrees_consistent(self):
        # stored term order must always match freshly recomputed keys
        rng = random.Random(5)
        r = Ring(3, grading=Grading((1, 2, 1)))

        def rand_poly():
            return Polynomial(r, {tuple(rng.randrange(4) for _ in range(3)):
                                  rng.randrange(r.field.p) for _ in range(6)})

        for _ in range(40):
            f = rand_poly() * rand_poly() + rand_poly()
            keys = [GREVLEX.key(r, m) for m, _ in f.sorted_terms()]
            assert keys == sorted(keys, reverse=True)
            for m, _ in f.sorted_terms():
                assert r.mdeg(m) == sum(w * e for w, e in
                                        zip(r.grading.weights, m))

    def test_diff(self):
        r = ring2()
        assert P("X1^2 + X2^2 - 1", r).diff(0) == P("2*X1", r)
        assert P("X1*X2", r).diff(1) == P("X1", r)
        assert P("5", r).diff(0).is_zero()


class TestHighestPart:
    def test_drops_constant(self):
        r = ring2()
        assert P("X1^2 + X2^2 - 1", r).highest_part() == P("X1^2 + X2^2", r)

    def test_already_homogeneous(self):
        r = ring2()
        assert P("X1", r).highest_part() == P("X1", r)

    def test_mixed(self):
        r = ring2()
        assert P("X1^3 + X1*X2 + 5", r).highest_part() == P("X1^3", r)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            Polynomial.zero(ring2()).highest_part()

    def test_difference_has_smaller_degree(self):
        rng = random.Random(2)
        r = ring2()
        for _ in range(30):
            f = Polynomial(r, {(rng.randrange(4), rng.randrange(4)): 1 + rng.randrange(100)
                               for _ in range(5)})
            top = f.highest_part()
            assert top.is_homogeneous and top.degree() == f.degree()
            rest = f - top
            assert rest.is_zero() or rest.degree() < f.degree()


class TestTextFormat:
    def test_round_trip(self):
        r = ring2()
        for text in ["X1^2 + X2^2 + 65520", "2*X2", "1", "0",
                     "3*X1^2*X2 + X1 + 7"]:
            f = P(text, r)
            assert parse_poly(format_poly(f), r) == f

    def test_omissions(self):
        r = ring2()
        assert P("X1", r) == P("1*X1^1", r)
        assert P("2X1X2", r) == P("2*X1*X2", r)
        assert P("X1 - X2", r) == P("X1 + 65520*X2", r)

    def test_leading_term_first(self):
        r = ring2()
        assert format_poly(P("1 + X1^2 + X2", r)) == "X1^2 + X2 + 1"

    def test_unknown_variable(self):
        with pytest.raises(ParseError):
            P("X3 + 1", ring2())

    def test_garbage(self):
        with pytest.raises(ParseError):
            P("X1 + @", ring2())

    def test_empty(self):
        with pytest.raises(ParseError):
            P("   ", ring2())


def test_monomial_enumeration():
    assert len(monomials_exact(3, 2)) == 6
    assert len(monomials_upto(2, 2)) == 6
    assert set(monomials_upto(2, 1)) == {(0, 0), (1, 0), (0, 1)}
