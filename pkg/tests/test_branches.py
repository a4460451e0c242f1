import pytest

from curvelab.algebra import RAT, compose
from curvelab.branches import (
    delta_invariant,
    implicitize,
    newton_polygon,
    rational_branches,
)
from curvelab.errors import (
    ExtensionRequired,
    NonIsolated,
    NotIrreducible,
    NotNormalForm,
)
from curvelab.parsing import parse_param as PP, parse_poly as P


class TestNewtonPolygon:
    def test_cusp(self):
        assert newton_polygon(P("x^2 - y^3")) == [(RAT(-2, 3), 1)]

    def test_two_point_support(self):
        assert newton_polygon(P("x^2*y + y^4")) == [(RAT(-2, 3), 1)]

    def test_monomial_has_no_segments(self):
        assert newton_polygon(P("x*y")) == []

    def test_two_segments(self):
        # Support (0,2), (1,1), (3,0): slopes -1 and -2 as x per unit y.
        segments = newton_polygon(P("y^2 + x*y + x^3"))
        assert segments == [(RAT(-1), 1), (RAT(-2), 1)]

    def test_lattice_length_counts_interior_points(self):
        assert newton_polygon(P("x^4 - y^6")) == [(RAT(-2, 3), 2)]


class TestRationalBranches:
    def test_swapped_cusp(self):
        (b,) = rational_branches(P("x^2 - y^3"))
        assert (b.m, b.beta, b.swapped) == (2, 3, True)
        assert b.tangent == (RAT(0), RAT(1))
        normal = b.normal_param()
        assert normal.x == PP("t^2, t^3").x and normal.y == PP("t^2, t^3").y

    def test_direct_cusp(self):
        (b,) = rational_branches(P("y^2 - x^3"))
        assert (b.m, b.beta, b.swapped) == (2, 3, False)

    def test_two_branch_sextic(self):
        branches = rational_branches(P("x^4 - y^6"))
        assert [(b.m, b.beta) for b in branches] == [(2, 3), (2, 3)]
        f = P("x^4 - y^6")
        for b in branches:
            assert compose(f, b.param.x, b.param.y).is_exactly_zero

    def test_extension_required(self):
        with pytest.raises(ExtensionRequired) as err:
            rational_branches(P("x^2 - 2*y^3"))
        assert "u^2 - 2" in str(err.value)

    def test_node_has_two_smooth_branches(self):
        branches = rational_branches(P("x^3 + y^3 - x*y"))
        assert sorted(b.m for b in branches) == [1, 1]
        assert all(b.smooth and b.beta is None for b in branches)

    def test_axis_factors_become_line_branches(self):
        branches = rational_branches(P("x*y"))
        tangents = sorted(str(b.tangent) for b in branches)
        assert len(branches) == 2 and all(b.m == 1 for b in branches)

    def test_repeated_factor_rejected(self):
        with pytest.raises(NonIsolated):
            rational_branches(P("(y - x^2)^2"))

    def test_branch_parametrizations_annihilate_f(self, rng):
        for poly in ["y^2 - x^5", "(y - x^2)*(y + x^2)", "x^2*y + y^4", "y^3 - 3*x^3*y - x^4 - x^5"]:
            f = P(poly)
            for b in rational_branches(f):
                pulled = compose(f, b.param.x, b.param.y)
                if pulled.is_exactly_zero:
                    continue
                # Inexact parametrizations vanish to their working precision.
                assert all(not c for c in pulled.coefficients().values())

    def test_tangent_of_diagonal_branch(self):
        (b,) = rational_branches(P("y - x + x^2"))
        assert b.m == 1 and b.tangent == (RAT(1), RAT(1))


class TestImplicitize:
    @pytest.mark.parametrize(
        "param,poly",
        [("t^2, t^3", "y^2 - x^3"), ("t^2, t^5", "y^2 - x^5")],
    )
    def test_monomial_cases(self, param, poly):
        assert implicitize(PP(param)) == P(poly)

    def test_higher_ramification(self):
        g = PP("t^4, t^6 + t^7")
        f = implicitize(g)
        assert compose(f, g.x, g.y).is_exactly_zero
        assert f.coefficient(0, 4) == 1
        from curvelab.intersection import multiplicity

        assert multiplicity(f) == 4

    def test_roundtrip_recovers_branch_data(self):
        for param in ["t^2, t^3", "t^2, t^5", "t^3, t^4", "t^2, t^4 + t^5", "t^4, t^6 + t^7"]:
            g = PP(param)
            branches = rational_branches(implicitize(g))
            assert len(branches) == 1
            b = branches[0]
            assert b.m == g.x.order()
            assert b.beta == first_exponent(g)

    def test_requires_monic_monomial_x(self):
        with pytest.raises(NotNormalForm):
            implicitize(PP("2*t^2, t^3"))

    def test_requires_primitive(self):
        with pytest.raises(NotNormalForm):
            implicitize(PP("t^2, t^4"))


def first_exponent(g):
    from curvelab.parametric import first_puiseux_exponent

    return first_puiseux_exponent(g)


class TestDelta:
    @pytest.mark.parametrize(
        "poly,expected", [("x^2 - y^3", 1), ("x^3 + y^4", 3), ("x^2 - y^5", 2)]
    )
    def test_examples(self, poly, expected):
        assert delta_invariant(P(poly)) == expected

    def test_reducible_rejected(self):
        with pytest.raises(NotIrreducible):
            delta_invariant(P("(y - x^2)*(y + x^2)"))

    def test_extension_refused(self):
        with pytest.raises(ExtensionRequired):
            delta_invariant(P("x^2 + y^2"))

    def test_sum_of_branch_multiplicities(self):
        branches = rational_branches(P("x^4 - y^6"))
        from curvelab.intersection import multiplicity

        assert sum(b.m for b in branches) == multiplicity(P("x^4 - y^6"))
