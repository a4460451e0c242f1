"""Contact sets: the orders a germ realizes against smooth probe curves.

A contact set is always a finite set of naturals, possibly with a tail "all
integers >= N"; that shape is closed under the two composition rules used
here (shifting by a multiplicity and union).  Rules cover irreducible
singular germs, transverse unions, and same-tangent groups in the
configurations the probe analysis resolves exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import IDENTICALLY_ZERO, BiPoly, compose
from .errors import HypothesisViolated, InvalidBranch
from .parametric import Param


@dataclass(frozen=True)
class ContactSet:
    """Finite set of naturals plus an optional all-integers-from-N tail.

    Canonical form: finite entries lie below the tail, and the tail is pulled
    down over any finite entries adjacent to it.
    """

    finite: frozenset[int]
    tail: Optional[int] = None

    @classmethod
    def of(cls, entries: Sequence[int] = (), tail: Optional[int] = None) -> "ContactSet":
        finite = set(int(e) for e in entries)
        if tail is not None:
            tail = int(tail)
            finite = {e for e in finite if e < tail}
            while tail - 1 in finite:
                tail -= 1
                finite.discard(tail)
        return cls(frozenset(finite), tail)

    @classmethod
    def naturals_from(cls, n: int) -> "ContactSet":
        return cls.of((), n)

    def __contains__(self, n: int) -> bool:
        return n in self.finite or (self.tail is not None and n >= self.tail)

    @property
    def is_bounded(self) -> bool:
        return self.tail is None

    def shift(self, k: int) -> "ContactSet":
        return ContactSet.of(
            [e + k for e in self.finite],
            None if self.tail is None else self.tail + k,
        )

    def union(self, other: "ContactSet") -> "ContactSet":
        tails = [t for t in (self.tail, other.tail) if t is not None]
        return ContactSet.of(self.finite | other.finite, min(tails) if tails else None)

    def __str__(self) -> str:
        bits = []
        if self.finite:
            bits.append("{" + ", ".join(str(e) for e in sorted(self.finite)) + "}")
        if self.tail is not None:
            bits.append(f"{{n >= {self.tail}}}")
        return " u ".join(bits) if bits else "{}"


def is_bounded(s: ContactSet) -> bool:
    """True exactly when the set has no tail (no smooth component)."""
    return s.is_bounded


def contact_set_irreducible(m: int, beta: Optional[int]) -> ContactSet:
    """Contact set of one irreducible branch from its multiplicity and first
    Puiseux exponent: multiples of m below beta, then beta itself.

    A smooth branch (m = 1) realizes every positive order.
    """
    if m < 1:
        raise InvalidBranch("multiplicity must be positive")
    if m == 1:
        return ContactSet.naturals_from(1)
    if beta is None or beta <= m:
        raise InvalidBranch("a singular branch needs a Puiseux exponent beta > m")
    if beta % m == 0:
        raise InvalidBranch("beta must not be divisible by the multiplicity")
    multiples = range(m, ((beta - 1) // m) * m + 1, m)
    return ContactSet.of(list(multiples) + [beta])


def contact_set_transverse_union(
    mult_f: int, set_f: ContactSet, mult_g: int, set_g: ContactSet
) -> ContactSet:
    """Contact set of a product of two germs with transverse tangent cones."""
    if mult_f < 1 or mult_g < 1:
        raise InvalidBranch("multiplicities must be positive")
    return set_g.shift(mult_f).union(set_f.shift(mult_g))


def contact_set_shared_tangents(
    groups: Sequence[Sequence[tuple[int, int]]],
    strict_literal: bool = False,
) -> ContactSet:
    """Contact set of singular branches grouped by shared tangent direction.

    Each group lists (m, beta) for branches sharing one tangent; directions
    of distinct groups are pairwise distinct.  Requires beta < 2m per branch,
    which pins the tangent-probe order of every branch to its beta; the set
    is then {M} plus one value M - M_j + beta_j per group.

    ``strict_literal`` instead enforces beta < m, a vacuous condition kept
    for comparison purposes; it rejects every input.
    """
    if not groups or any(not group for group in groups):
        raise InvalidBranch("need at least one nonempty tangent group")
    for group in groups:
        for m, beta in group:
            if m < 2 or beta is None or beta <= m or beta % m == 0:
                raise InvalidBranch(f"(m, beta) = ({m}, {beta}) is not a singular branch")
            bound = m if strict_literal else 2 * m
            if beta >= bound:
                raise HypothesisViolated(
                    f"branch (m, beta) = ({m}, {beta}) violates beta < {bound}"
                )
    m_totals = [sum(m for m, _ in group) for group in groups]
    beta_totals = [sum(beta for _, beta in group) for group in groups]
    total = sum(m_totals)
    values = [total] + [total - mj + bj for mj, bj in zip(m_totals, beta_totals)]
    return ContactSet.of(values)


@dataclass(frozen=True)
class TangentGroupSpec:
    """Branch data of one tangent-direction group, for set composition.

    ``singular`` lists (m, beta) pairs with beta < 2m each; ``smooth`` counts
    smooth branches in the group; ``smooth_contact`` is the pairwise contact
    order when the group is exactly two smooth branches.
    """

    singular: tuple[tuple[int, int], ...] = ()
    smooth: int = 0
    smooth_contact: Optional[int] = None

    @property
    def total_multiplicity(self) -> int:
        return self.smooth + sum(m for m, _ in self.singular)


def _tangent_order_set(group: TangentGroupSpec) -> ContactSet:
    """Orders realized by probes tangent to the group's common direction.

    Resolved configurations:
      * one singular branch: multiples 2m..(<beta) plus beta;
      * only singular branches, each with beta < 2m: the single value
        sum(beta);
      * one smooth branch alone: every order from 2 up;
      * one smooth branch plus beta < 2m singulars: a tail from sum(beta)+2;
      * two smooth branches with known mutual contact c: even orders
        2p for 2 <= p < c, then a tail from 2c.
    """
    singular, smooth = group.singular, group.smooth
    for m, beta in singular:
        if beta <= m or beta % m == 0:
            raise InvalidBranch(f"(m, beta) = ({m}, {beta}) is not a singular branch")
    if smooth == 0 and len(singular) == 1:
        (m, beta), = singular
        multiples = [k * m for k in range(2, (beta - 1) // m + 1)]
        return ContactSet.of(multiples + [beta])
    if smooth == 0:
        if any(beta >= 2 * m for m, beta in singular):
            raise HypothesisViolated(
                "several singular branches on one tangent need beta < 2m each"
            )
        return ContactSet.of([sum(beta for _, beta in singular)])
    if smooth == 1 and not singular:
        return ContactSet.naturals_from(2)
    if smooth == 1:
        if any(beta >= 2 * m for m, beta in singular):
            raise HypothesisViolated(
                "a smooth branch plus singular branches needs beta < 2m each"
            )
        return ContactSet.naturals_from(sum(beta for _, beta in singular) + 2)
    if smooth == 2 and not singular:
        if group.smooth_contact is None or group.smooth_contact < 1:
            raise HypothesisViolated(
                "two smooth branches need their mutual contact order"
            )
        c = group.smooth_contact
        return ContactSet.of([2 * p for p in range(2, c)], 2 * c)
    raise HypothesisViolated("unresolved tangent group configuration")


def contact_set_from_groups(groups: Sequence[TangentGroupSpec]) -> ContactSet:
    """Contact set of a germ from its branch structure by tangent direction.

    A probe transverse to every tangent realizes the total multiplicity M; a
    probe tangent to group j realizes M - M_j plus any order in that group's
    tangent-order set.
    """
    if not groups:
        raise InvalidBranch("need at least one tangent group")
    total = sum(g.total_multiplicity for g in groups)
    result = ContactSet.of([total])
    for g in groups:
        result = result.union(_tangent_order_set(g).shift(total - g.total_multiplicity))
    return result


def probe_order_sample(f: BiPoly, probe: Param) -> Optional[int]:
    """Order of f along one immersed probe; None when the probe lies in the
    curve (the order is then no natural number)."""
    probe.validate()
    orders = set()
    for s in (probe.x, probe.y):
        o = s.order()
        if o is not IDENTICALLY_ZERO:
            orders.add(o)
    if 1 not in orders:
        raise InvalidBranch("probe must be an immersion (order 1 in a coordinate)")
    order = compose(f, probe.x, probe.y).order()
    if order is IDENTICALLY_ZERO:
        return None
    return order
