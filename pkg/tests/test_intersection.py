import pytest

from curvelab.algebra import BiPoly, INFINITE, compose, TruncSeries
from curvelab.errors import ConsistencyError, NotThroughOrigin, NotYGeneral
from curvelab.intersection import (
    bipoly_gcd,
    divides,
    exact_poly_div,
    gcd_is_certified_trivial,
    intersection_multiplicity,
    milnor_number,
    multiplicity,
    tangent_cone,
    tangent_cones_transverse,
    teissier_value,
)
from curvelab.parsing import parse_poly as P

from conftest import random_linear_change, random_poly, random_unit


class TestMultiplicityAndCone:
    @pytest.mark.parametrize(
        "poly,expected",
        [("x^2 + y^3", 2), ("x^3 + x*y^3", 3), ("y - x^2", 1)],
    )
    def test_multiplicity(self, poly, expected):
        assert multiplicity(P(poly)) == expected

    @pytest.mark.parametrize(
        "poly,cone",
        [("x^2 + y^3", "x^2"), ("x^2 - y^2 + y^3", "x^2 - y^2"), ("x*y + x^3", "x*y")],
    )
    def test_tangent_cone(self, poly, cone):
        assert tangent_cone(P(poly)) == P(cone)

    def test_rejects_units(self):
        with pytest.raises(NotThroughOrigin):
            multiplicity(P("1 + x"))


class TestIntersectionExamples:
    def test_axes(self):
        assert intersection_multiplicity(P("x"), P("y")).value == 1

    def test_transverse_pair(self):
        assert intersection_multiplicity(P("x^2+y^5"), P("y^2+x^5")).value == 4

    def test_order_along_axis(self):
        assert intersection_multiplicity(P("y"), P("x^2+y^3")).value == 2

    def test_shared_component_detected(self):
        f = P("x^2 - y^3")
        g = P("(x^2 - y^3)*(2 + x^2)")
        result = intersection_multiplicity(f, g)
        assert result.is_infinite
        assert divides(result.certificate, f)
        assert result.certificate.vanishes_at_origin()

    def test_adding_multiples_keeps_value_finite(self):
        # 2f + x^4 shares no component with f: the value is m(f, x^4) = 12.
        f = P("x^2 - y^3")
        assert intersection_multiplicity(f, P("2*x^2 - 2*y^3 + x^4")).value == 12

    def test_missing_origin_gives_zero(self):
        assert intersection_multiplicity(P("x + 1"), P("y")).value == 0

    def test_zero_polynomial_shares_everything(self):
        result = intersection_multiplicity(BiPoly.zero(), P("x^2 - y^3"))
        assert result.is_infinite


class TestAxioms:
    def test_symmetry(self, rng):
        for _ in range(200):
            f = random_poly(rng, 3, 3)
            g = random_poly(rng, 3, 3)
            assert intersection_multiplicity(f, g).value == intersection_multiplicity(g, f).value

    def test_unit_invariance(self, rng):
        for _ in range(200):
            f = random_poly(rng, 3, 3)
            g = random_poly(rng, 3, 3)
            u, v = random_unit(rng), random_unit(rng)
            assert (
                intersection_multiplicity(u * f, v * g).value
                == intersection_multiplicity(f, g).value
            )

    def test_additivity(self, rng):
        done = 0
        while done < 200:
            f = random_poly(rng, 3, 3)
            g = random_poly(rng, 2, 3)
            h = random_poly(rng, 2, 3)
            parts = (
                intersection_multiplicity(f, g),
                intersection_multiplicity(f, h),
                intersection_multiplicity(f, g * h),
            )
            if any(p.is_infinite for p in parts):
                continue
            assert parts[2].value == parts[0].value + parts[1].value
            done += 1

    def test_stability_under_multiples(self, rng):
        for _ in range(200):
            f = random_poly(rng, 3, 3)
            g = random_poly(rng, 3, 3)
            h = random_poly(rng, 2, 3, through_origin=False)
            lhs = intersection_multiplicity(f, g + f * h)
            rhs = intersection_multiplicity(f, g)
            assert lhs.value == rhs.value

    def test_coordinate_invariance(self, rng):
        done = 0
        while done < 200:
            f = random_poly(rng, 3, 3)
            g = random_poly(rng, 3, 3)
            phi_x, phi_y = random_linear_change(rng)
            # Degree-3 tail keeps the change a local diffeomorphism.
            for i in range(2, 4):
                for j in range(0, 4 - i):
                    if rng.random() < 0.3:
                        phi_x = phi_x + BiPoly({(i, j): rng.randint(-3, 3)})
                    if rng.random() < 0.3:
                        phi_y = phi_y + BiPoly({(i, j): rng.randint(-3, 3)})
            lhs = intersection_multiplicity(f.subs_poly(phi_x, phi_y), g.subs_poly(phi_x, phi_y))
            rhs = intersection_multiplicity(f, g)
            assert (lhs.value == rhs.value) or (lhs.is_infinite and rhs.is_infinite)
            done += 1

    def test_transverse_product_rule(self, rng):
        done = 0
        while done < 200:
            f = random_poly(rng, 3, 3)
            g = random_poly(rng, 3, 3)
            result = intersection_multiplicity(f, g)
            if result.is_infinite or not tangent_cones_transverse(f, g):
                continue
            assert result.value == multiplicity(f) * multiplicity(g)
            done += 1


class TestMilnor:
    @pytest.mark.parametrize("k", range(1, 9))
    def test_a_family(self, k):
        f = P(f"x^2 + y^{k + 1}")
        assert milnor_number(f) == k

    def test_e6(self):
        assert milnor_number(P("x^3 + y^4")) == 6

    def test_e7(self):
        assert milnor_number(P("x^3 + x*y^3")) == 7

    def test_non_isolated(self):
        assert milnor_number(P("(x^2 - y^3)^2")) is INFINITE


class TestTeissier:
    @pytest.mark.parametrize(
        "poly,expected",
        [("x^2 + y^3", 4), ("x^3 + y^4", 9), ("x^2 + y^5", 8)],
    )
    def test_examples(self, poly, expected):
        # Each value independently equals milnor + ord f(0, y) - 1; the
        # operation asserts that identity internally.
        assert teissier_value(P(poly)) == expected

    def test_rejects_y_degenerate(self):
        with pytest.raises(NotYGeneral):
            teissier_value(P("x^2 + x*y"))


class TestGcdMachinery:
    def test_gcd_of_coprime_is_constant(self):
        assert bipoly_gcd(P("x^2 - y^3"), P("x^4")).is_constant

    def test_gcd_extracts_common_factor(self):
        d = bipoly_gcd(P("(x^2 - y^3)*(x + y + 1)"), P("(x^2 - y^3)*(x - 7)"))
        assert d == P("y^3 - x^2") or d == P("x^2 - y^3")

    def test_certified_screen_never_lies(self, rng):
        for _ in range(150):
            f = random_poly(rng, 3, 3)
            g = random_poly(rng, 3, 3)
            if gcd_is_certified_trivial(f, g):
                assert bipoly_gcd(f, g).is_constant

    def test_exact_division_roundtrip(self, rng):
        for _ in range(100):
            a = random_poly(rng, 3, 4, through_origin=False)
            b = random_poly(rng, 3, 4, through_origin=False)
            assert exact_poly_div(a * b, b) == a


class TestBranchOracleAgreement:
    def test_intersection_equals_order_along_parametrization(self, rng):
        # For curves with a known parametrization the intersection number is
        # the order of the other curve pulled back along it.
        cases = [
            ("y^2 - x^3", (2, {3: 1})),
            ("y^2 - x^5", (2, {5: 1})),
            ("y^3 - x^4", (3, {4: 1})),
        ]
        for poly, (m, ycoeffs) in cases:
            f = P(poly)
            xs = TruncSeries.monomial(m)
            ys = TruncSeries(ycoeffs)
            for _ in range(30):
                g = random_poly(rng, 4, 5)
                got = intersection_multiplicity(f, g)
                if got.is_infinite:
                    # g is a multiple of f; the pullback vanishes identically.
                    assert compose(g, xs, ys).is_exactly_zero
                    continue
                assert got.value == compose(g, xs, ys).order()
