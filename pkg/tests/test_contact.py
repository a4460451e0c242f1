import pytest

from curvelab.contact import (
    ContactSet,
    TangentGroupSpec,
    contact_set_from_groups,
    contact_set_irreducible,
    contact_set_shared_tangents,
    contact_set_transverse_union,
    is_bounded,
    probe_order_sample,
)
from curvelab.errors import HypothesisViolated, InvalidBranch
from curvelab.parsing import parse_param as PP, parse_poly as P
from curvelab.verify import condensed_contact_set

from conftest import random_immersion


NATURALS = ContactSet.naturals_from(1)


class TestContactSetShape:
    def test_canonical_merges_tail_neighbours(self):
        s = ContactSet.of([2, 3, 7], tail=8)
        assert s == ContactSet.of([2, 3], tail=7)

    def test_shift_moves_everything(self):
        s = ContactSet.of([2, 4], tail=9).shift(3)
        assert s == ContactSet.of([5, 7], tail=12)

    def test_union_keeps_smallest_tail(self):
        a = ContactSet.of([2], tail=10)
        b = ContactSet.of([3], tail=6)
        assert a.union(b) == ContactSet.of([2, 3], tail=6)

    def test_membership(self):
        s = ContactSet.of([3], tail=5)
        assert 3 in s and 5 in s and 77 in s and 4 not in s

    def test_boundedness(self):
        assert is_bounded(ContactSet.of([3, 4]))
        assert not is_bounded(ContactSet.of([3], tail=5))
        assert is_bounded(ContactSet.of([]))


class TestIrreducibleRule:
    def test_cusp_family(self):
        for k in range(1, 5):
            s = contact_set_irreducible(2, 2 * k + 1)
            assert s == ContactSet.of(list(range(2, 2 * k + 1, 2)) + [2 * k + 1])

    def test_multiplicity_three(self):
        assert contact_set_irreducible(3, 4) == ContactSet.of([3, 4])
        assert contact_set_irreducible(3, 5) == ContactSet.of([3, 5])

    def test_smooth_branch(self):
        assert contact_set_irreducible(1, None) == NATURALS

    def test_bad_branch_data(self):
        with pytest.raises(InvalidBranch):
            contact_set_irreducible(2, 2)
        with pytest.raises(InvalidBranch):
            contact_set_irreducible(3, 6)


class TestTransverseUnion:
    def test_line_plus_cusp_family(self):
        # Transverse smooth + singular assembles to all integers from 3 on.
        for k in (5, 7):
            cusp = contact_set_irreducible(2, k - 2)
            total = contact_set_transverse_union(1, cusp, 2, NATURALS)
            assert total == ContactSet.naturals_from(3)

    def test_node_from_two_smooth(self):
        assert contact_set_transverse_union(1, NATURALS, 1, NATURALS) == ContactSet.naturals_from(2)

    def test_shift_identity(self):
        s = ContactSet.of([2, 3])
        assert s.shift(0).union(s) == s

    def test_singleton_arithmetic(self):
        out = contact_set_transverse_union(2, ContactSet.of([3]), 3, ContactSet.of([2]))
        assert out == ContactSet.of([5])


class TestSharedTangents:
    def test_single_group_single_branch(self):
        assert contact_set_shared_tangents([[(2, 3)]]) == ContactSet.of([2, 3])

    def test_two_cusp_groups(self):
        assert contact_set_shared_tangents([[(2, 3)], [(2, 3)]]) == ContactSet.of([4, 5])

    def test_empty_input(self):
        with pytest.raises(InvalidBranch):
            contact_set_shared_tangents([])

    def test_hypothesis_check(self):
        with pytest.raises(HypothesisViolated):
            contact_set_shared_tangents([[(2, 5)]])

    def test_strict_literal_mode_rejects_everything(self):
        # The literal reading beta < m contradicts beta > m, so no branch can
        # ever satisfy it; the flag exists to witness that emptiness.
        with pytest.raises(HypothesisViolated):
            contact_set_shared_tangents([[(2, 3)]], strict_literal=True)


class TestGroupComposition:
    def test_line_plus_tangent_cusp(self):
        s = contact_set_from_groups([TangentGroupSpec(singular=((2, 3),), smooth=1)])
        assert s == ContactSet.of([3], tail=5)

    def test_two_tangent_smooth_branches(self):
        for contact in range(2, 5):
            s = contact_set_from_groups([TangentGroupSpec(smooth=2, smooth_contact=contact)])
            expected = ContactSet.of([2] + [2 * p for p in range(2, contact)], 2 * contact)
            assert s == expected

    def test_unresolved_configuration(self):
        with pytest.raises(HypothesisViolated):
            contact_set_from_groups([TangentGroupSpec(smooth=3)])


class TestCondensedFromBranches:
    @pytest.mark.parametrize(
        "poly,finite,tail",
        [
            ("y^2 - x^3", [2, 3], None),
            ("y^2 - x^5", [2, 4, 5], None),
            ("x^4 - y^6", [4, 6], None),
            ("x^3 + x*y^3", [3], 5),
            ("x^2 - y^6", [2, 4], 6),
        ],
    )
    def test_known_sets(self, poly, finite, tail):
        assert condensed_contact_set(P(poly)) == ContactSet.of(finite, tail)


class TestProbing:
    def test_probe_orders_land_in_the_set(self, rng):
        targets = {
            "x^2 + y^3": contact_set_irreducible(2, 3),
            "x^3 + y^4": contact_set_irreducible(3, 4),
            "x^2*y + y^3": ContactSet.naturals_from(3),
        }
        for poly, target in targets.items():
            f = P(poly)
            for _ in range(120):
                order = probe_order_sample(f, random_immersion(rng))
                if order is not None:
                    assert order in target

    def test_specific_probes(self):
        assert probe_order_sample(P("x^3 + y^4"), PP("t, t")) == 3
        assert probe_order_sample(P("x^2 + y^3"), PP("t, t^2")) == 2

    def test_non_immersion_rejected(self):
        with pytest.raises(InvalidBranch):
            probe_order_sample(P("x^3 + y^4"), PP("t^3, t^2"))

    def test_probe_inside_curve_returns_none(self):
        assert probe_order_sample(P("x^2*y + y^3"), PP("t, 0")) is None
