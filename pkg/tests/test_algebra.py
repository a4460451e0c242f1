import random

import pytest

from curvelab.algebra import (
    IDENTICALLY_ZERO,
    BiPoly,
    RAT,
    TruncSeries,
    compose,
    with_precision_retry,
)
from curvelab.errors import PrecisionExhausted
from curvelab.parsing import parse_poly

from conftest import random_exact_series, random_poly

x = BiPoly.x()
y = BiPoly.y()


class TestBiPolyArithmetic:
    def test_product_of_variables(self):
        assert x * y == BiPoly({(1, 1): 1})

    def test_addition_identity(self):
        f = parse_poly("x^2 + y^3")
        assert f + BiPoly.zero() == f

    def test_difference_of_squares(self):
        assert (x - y**2) * (x + y**2) == parse_poly("x^2 - y^4")

    def test_zero_terms_are_dropped(self):
        f = x + y - x
        assert f == y
        assert (f - y).is_zero

    def test_ring_axioms_randomized(self, rng):
        for _ in range(1000):
            a = random_poly(rng, 3, 4, through_origin=False)
            b = random_poly(rng, 3, 4, through_origin=False)
            c = random_poly(rng, 3, 4, through_origin=False)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c

    def test_truncated_product_matches_truncated_full_product(self, rng):
        for _ in range(50):
            a = random_poly(rng, 4, 5, through_origin=False)
            b = random_poly(rng, 4, 5, through_origin=False)
            assert a.mul_truncated(b, 5) == (a * b).truncated(5)


class TestDifferentiation:
    def test_partial_x(self):
        assert parse_poly("x^2 + y^3").diff("x") == parse_poly("2*x")

    def test_partial_y(self):
        assert parse_poly("x^2 + y^3").diff("y") == parse_poly("3*y^2")

    def test_mixed_term(self):
        assert parse_poly("x*y^3").diff("y") == parse_poly("3*x*y^2")


class TestCompose:
    def test_linear_pullback(self):
        s = compose(y, TruncSeries.monomial(2), TruncSeries.monomial(3))
        assert s == TruncSeries.monomial(3)

    def test_annihilated_by_its_parametrization(self):
        f = parse_poly("x^3 - y^2")
        s = compose(f, TruncSeries.monomial(2), TruncSeries.monomial(3))
        assert s.is_exactly_zero

    def test_first_component(self):
        s = compose(x, TruncSeries.monomial(2), TruncSeries.monomial(3))
        assert s == TruncSeries.monomial(2)

    def test_compose_is_ring_homomorphism(self, rng):
        for _ in range(60):
            f = random_poly(rng, 3, 3, through_origin=False)
            g = random_poly(rng, 3, 3, through_origin=False)
            xs = random_exact_series(rng, 4, 4)
            ys = random_exact_series(rng, 4, 4)
            assert compose(f * g, xs, ys) == compose(f, xs, ys) * compose(g, xs, ys)

    def test_requires_vanishing_components(self):
        with pytest.raises(ValueError):
            compose(x, TruncSeries({0: 1, 1: 1}), TruncSeries.monomial(1))


class TestSeriesOrder:
    def test_plain_order(self):
        s = TruncSeries({3: 2, 5: 1})
        assert s.order() == 3

    def test_exact_zero(self):
        assert TruncSeries.zero().order() is IDENTICALLY_ZERO

    def test_truncated_unknown(self):
        s = TruncSeries({}, precision=10)
        with pytest.raises(PrecisionExhausted):
            s.order()

    def test_order_additivity_on_products(self, rng):
        for _ in range(200):
            a = random_exact_series(rng)
            b = random_exact_series(rng)
            assert (a * b).order() == a.order() + b.order()

    def test_derivative_drops_order_by_one(self, rng):
        for _ in range(200):
            a = random_exact_series(rng)
            if a.order() < 1:
                continue
            d = a.diff()
            if a.order() == 1 and d.is_exactly_zero:
                # a = c*t: derivative is a nonzero constant of order 0.
                continue
            if d.is_exactly_zero:
                continue
            assert d.order() == a.order() - 1


class TestSeriesPrecision:
    def test_sum_keeps_joint_precision(self):
        a = TruncSeries({1: 1}, precision=8)
        b = TruncSeries({2: 1}, precision=16)
        assert (a + b).precision == 8

    def test_product_of_exact_series_is_exact(self):
        a = TruncSeries({1: 1})
        assert (a * a).exact

    def test_shift_moves_precision_window(self):
        a = TruncSeries({1: 1}, precision=8)
        assert a.shift(3).precision == 11

    def test_retry_doubles_until_success(self):
        seen = []

        def attempt(precision):
            seen.append(precision)
            if precision < 256:
                raise PrecisionExhausted("try harder")
            return precision

        assert with_precision_retry(attempt) == 256
        assert seen == [64, 128, 256]

    def test_retry_gives_up_at_cap(self):
        def attempt(precision):
            raise PrecisionExhausted("never enough")

        with pytest.raises(PrecisionExhausted):
            with_precision_retry(attempt, start=1024, cap=2048)
