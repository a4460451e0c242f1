import math

import pytest

from curvelab.algebra import INFINITE, RAT, TruncSeries
from curvelab.errors import NotNormalForm, Smooth
from curvelab.parametric import (
    CircleCoeffs,
    Param,
    circle_contact_order,
    first_puiseux_exponent,
    inflection_order,
    monomial_param,
    osculating_circle,
    verify_lambda_relation,
    vertex_order,
)
from curvelab.parsing import parse_param as PP


class TestInflectionOrder:
    @pytest.mark.parametrize(
        "param,expected", [("t^2, t^3", 2), ("t^3, t^4", 4), ("t, t^2", 0)]
    )
    def test_examples(self, param, expected):
        assert inflection_order(PP(param)) == expected

    def test_line_is_infinite(self):
        assert inflection_order(PP("t, 2*t")) is INFINITE

    def test_closed_form_sweep(self):
        for m in range(2, 13):
            for n in range(m + 1, 13):
                if math.gcd(m, n) != 1:
                    continue
                assert inflection_order(monomial_param(m, n)) == m + n - 3


class TestVertexOrder:
    @pytest.mark.parametrize(
        "param,expected", [("t^2, t^3", 3), ("t^3, t^5", 8), ("t^2, t^4 + t^5", 5)]
    )
    def test_examples(self, param, expected):
        assert vertex_order(PP(param)) == expected

    def test_closed_form_away_from_double_multiplicity(self):
        for m in range(2, 13):
            for n in range(m + 1, 13):
                if math.gcd(m, n) != 1 or n == 2 * m:
                    continue
                assert vertex_order(monomial_param(m, n)) == 3 * m + n - 6

    def test_line_is_infinite(self):
        assert vertex_order(PP("t, 3*t")) is INFINITE

    def test_reparametrization_invariance(self, rng):
        base = PP("t^2, t^4 + t^5")
        for _ in range(25):
            # t -> t * u(t) with u(0) != 0.
            u = {0: rng.choice([1, -1, 2])}
            for k in range(1, 5):
                if rng.random() < 0.5:
                    u[k] = rng.randint(-4, 4)
            tau = TruncSeries({k + 1: c for k, c in u.items()})
            from curvelab.algebra import compose
            from curvelab.algebra import BiPoly

            def substitute(series):
                # series(tau(t)) via polynomial composition in one variable.
                out = TruncSeries.zero()
                for e, c in series.coefficients().items():
                    out = out + tau**e * c
                return out

            moved = Param(substitute(base.x), substitute(base.y))
            assert inflection_order(moved) == inflection_order(base)
            assert vertex_order(moved) == vertex_order(base)

    def test_similarity_invariance(self):
        base = PP("t^2, t^3")
        for a, b in [(RAT(3, 5), RAT(4, 5)), (RAT(1), RAT(1)), (RAT(5, 13), RAT(12, 13))]:
            moved = Param(a * base.x + b * base.y, -b * base.x + a * base.y)
            assert vertex_order(moved) == vertex_order(base)


class TestPuiseuxExponent:
    @pytest.mark.parametrize(
        "param,expected", [("t^2, t^3", 3), ("t^4, t^6 + t^7", 6), ("t^4, t^7 + t^8", 7)]
    )
    def test_examples(self, param, expected):
        assert first_puiseux_exponent(PP(param)) == expected

    def test_imprimitive_rejected(self):
        with pytest.raises(NotNormalForm):
            first_puiseux_exponent(PP("t^2, t^4"))

    def test_normal_form_required(self):
        with pytest.raises(NotNormalForm):
            first_puiseux_exponent(PP("2*t^2, t^3"))


class TestOsculatingCircle:
    def test_degenerate_case(self):
        osc = osculating_circle(PP("t^2, t^3"))
        assert osc.degenerate
        assert osc.circle == CircleCoeffs(RAT(1), RAT(0), RAT(0))
        assert osc.lam == 4

    def test_line_case(self):
        osc = osculating_circle(PP("t^2, t^5"))
        assert not osc.degenerate
        assert osc.circle.is_line
        assert osc.lam == 4
        assert osc.tangent_line_contact == 5

    def test_balanced_case(self):
        osc = osculating_circle(PP("t^2, t^4 + t^5"))
        assert osc.circle == CircleCoeffs(RAT(1), RAT(0), RAT(-1, 2))
        assert osc.lam == 5
        # The circle really has that contact order.
        assert circle_contact_order(PP("t^2, t^4 + t^5"), osc.circle) == 5

    def test_smooth_rejected(self):
        with pytest.raises(Smooth):
            osculating_circle(PP("t, t^2"))

    def test_tangent_line_contact_is_reported(self):
        assert osculating_circle(PP("t^2, t^3")).tangent_line_contact == 3

    def test_residual_never_vanishes_for_primitive_input(self):
        # A parametrization whose residual would vanish is imprimitive and
        # rejected upstream.
        with pytest.raises(NotNormalForm):
            osculating_circle(PP("t^2, t^4"))


class TestLambdaRelation:
    @pytest.mark.parametrize(
        "param", ["t^2, t^3", "t^3, t^4", "t^2, t^4 + t^5", "t^3, t^5 + t^7", "t^4, t^6 + t^7"]
    )
    def test_relation(self, param):
        assert verify_lambda_relation(PP(param))
