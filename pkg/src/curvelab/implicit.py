"""Inflection and vertex invariants of implicitly defined curve germs.

The defining equation f yields two companion polynomials: an inflection
polynomial built from second derivatives and a vertex polynomial built from
second and third derivatives.  The counts are the intersection numbers of f
with these companions at the origin; a shared component (necessarily a line,
respectively a complex circle or line) makes the count infinite, and the gcd
itself is returned as the certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import INFINITE, BiPoly, Count, is_infinite
from .errors import (
    ConsistencyError,
    HypothesisViolated,
    NotThroughOrigin,
    SharedComponent,
)
from .intersection import (
    InterResult,
    bipoly_gcd,
    intersection_multiplicity,
    milnor_number,
    multiplicity,
)


def inflection_polynomial(f: BiPoly, maxdeg: Optional[int] = None) -> BiPoly:
    """f_y^2 f_xx - 2 f_x f_y f_xy + f_x^2 f_yy.

    With ``maxdeg`` every product is truncated in total degree, which keeps
    jet-level computations cheap.
    """
    mul = (lambda a, b: a.mul_truncated(b, maxdeg)) if maxdeg is not None else (lambda a, b: a * b)
    fx, fy = f.diff("x"), f.diff("y")
    fxx, fxy, fyy = fx.diff("x"), fx.diff("y"), fy.diff("y")
    return mul(mul(fy, fy), fxx) - 2 * mul(mul(fx, fy), fxy) + mul(mul(fx, fx), fyy)


def vertex_polynomial(f: BiPoly, maxdeg: Optional[int] = None) -> BiPoly:
    """Companion polynomial whose zero locus on the curve marks vertices.

    (f_x^2+f_y^2)(f_x^3 f_yyy - 3 f_x^2 f_y f_xyy + 3 f_x f_y^2 f_xxy - f_y^3 f_xxx)
    - 3((f_x^2-f_y^2) f_xy - f_x f_y (f_xx-f_yy)) * (inflection polynomial).
    """
    mul = (lambda a, b: a.mul_truncated(b, maxdeg)) if maxdeg is not None else (lambda a, b: a * b)
    fx, fy = f.diff("x"), f.diff("y")
    fxx, fxy, fyy = fx.diff("x"), fx.diff("y"), fy.diff("y")
    fxxx, fxxy = fxx.diff("x"), fxx.diff("y")
    fxyy, fyyy = fyy.diff("x"), fyy.diff("y")
    fx2, fy2 = mul(fx, fx), mul(fy, fy)
    fx3, fy3 = mul(fx2, fx), mul(fy2, fy)
    third = (
        mul(fx3, fyyy)
        - 3 * mul(mul(fx2, fy), fxyy)
        + 3 * mul(mul(fx, fy2), fxxy)
        - mul(fy3, fxxx)
    )
    infl = mul(fy2, fxx) - 2 * mul(mul(fx, fy), fxy) + mul(fx2, fyy)
    skew = mul(fx2 - fy2, fxy) - mul(mul(fx, fy), fxx - fyy)
    return mul(fx2 + fy2, third) - 3 * mul(skew, infl)


def _count_against(f: BiPoly, companion: BiPoly) -> InterResult:
    from .intersection import _certified_fulton

    if f.is_zero:
        raise ValueError("zero polynomial defines no curve germ")
    if not f.vanishes_at_origin():
        raise NotThroughOrigin("curve does not pass through the origin")
    if companion.is_zero:
        return InterResult(INFINITE, f.content_free())
    if not companion.vanishes_at_origin():
        return InterResult(0)
    value = _certified_fulton(f, companion)
    if value is not None:
        return InterResult(value)
    d = bipoly_gcd(f, companion)
    if d.is_constant or not d.vanishes_at_origin():
        from .errors import ConsistencyError

        raise ConsistencyError("uncertified finite count with trivial gcd")
    return InterResult(INFINITE, d)


def inflection_count(f: BiPoly) -> InterResult:
    """Number of inflections concentrated at the origin; infinite with a
    certificate exactly when the germ contains a line."""
    return _count_against(f, inflection_polynomial(f))


def vertex_count(f: BiPoly) -> InterResult:
    """Number of vertices concentrated at the origin; infinite with a
    certificate exactly when the germ contains a complex circle or line."""
    return _count_against(f, vertex_polynomial(f))


def is_ordinary_inflection(f: BiPoly) -> bool:
    """True when exactly one inflection sits at the origin."""
    r = inflection_count(f)
    return not r.is_infinite and r.value == 1


def is_ordinary_vertex(f: BiPoly) -> bool:
    r = vertex_count(f)
    return not r.is_infinite and r.value == 1


@dataclass(frozen=True)
class InvariantReport:
    """Bundle of the local invariants of one implicit germ."""

    mult: int
    milnor: Count
    inflections: Count
    vertices: Count
    inflection_certificate: Optional[BiPoly] = None
    vertex_certificate: Optional[BiPoly] = None


def analyze_implicit(f: BiPoly) -> InvariantReport:
    infl = inflection_count(f)
    vert = vertex_count(f)
    return InvariantReport(
        mult=multiplicity(f),
        milnor=milnor_number(f),
        inflections=infl.value,
        vertices=vert.value,
        inflection_certificate=infl.certificate,
        vertex_certificate=vert.certificate,
    )


def count_from_factors(factors: Sequence[BiPoly], kind: str) -> InterResult:
    """Additivity formula over a factorization of f.

    Sum of the per-factor counts plus 6 (inflections) or 12 (vertices) times
    the pairwise intersection numbers.  Factors sharing a component through
    the origin are rejected; an infinite per-factor count makes the total
    infinite with the same certificate.
    """
    if kind not in ("inflection", "vertex"):
        raise ValueError("kind must be 'inflection' or 'vertex'")
    if not factors:
        raise ValueError("empty factor list")
    counter = inflection_count if kind == "inflection" else vertex_count
    weight = 6 if kind == "inflection" else 12
    total = 0
    for g in factors:
        r = counter(g)
        if r.is_infinite:
            return InterResult(INFINITE, r.certificate)
        total += r.value  # type: ignore[operator]
    for a in range(len(factors)):
        for b in range(a + 1, len(factors)):
            m = intersection_multiplicity(factors[a], factors[b])
            if m.is_infinite:
                raise SharedComponent(
                    "factors share a component through the origin"
                )
            total += weight * m.value  # type: ignore[operator]
    return InterResult(total)


@dataclass(frozen=True)
class Weights:
    """Coprime positive weights and the quasi-homogeneous degree they define."""

    w1: int
    w2: int
    degree: int

    def __post_init__(self):
        if self.w1 <= 0 or self.w2 <= 0 or self.degree <= 0:
            raise ValueError("weights and degree must be positive")
        if math.gcd(self.w1, self.w2) != 1:
            raise ValueError("weights must be coprime")


def quasihomogeneous_inflection_count(
    f: BiPoly, w: Weights, relax_hypotheses: bool = False
) -> int:
    """Closed-form inflection count d(3d - 2w1 - 2w2)/(w1 w2), self-checked.

    Requires f semi-quasihomogeneous for w with principal part g of degree
    w.degree, neither variable dividing g, and (unless relaxed) neither
    weight equal to 1.  The value is asserted to be a positive integer and to
    agree with the general engine; disagreement raises ConsistencyError.
    """
    if f.is_zero:
        raise HypothesisViolated("zero polynomial")
    d = f.weighted_min_degree(w.w1, w.w2)
    if d != w.degree:
        raise HypothesisViolated(
            f"lowest weighted degree is {d}, not the declared {w.degree}"
        )
    g = f.weighted_part(w.w1, w.w2, d)
    if not relax_hypotheses and (w.w1 == 1 or w.w2 == 1):
        raise HypothesisViolated("a weight equals 1 (principal part may be homogeneous)")
    if all(i > 0 for i, _ in g.support()):
        raise HypothesisViolated("x divides the quasi-homogeneous part")
    if all(j > 0 for _, j in g.support()):
        raise HypothesisViolated("y divides the quasi-homogeneous part")
    numerator = d * (3 * d - 2 * w.w1 - 2 * w.w2)
    if numerator <= 0 or numerator % (w.w1 * w.w2) != 0:
        raise HypothesisViolated(
            f"closed form {numerator}/{w.w1 * w.w2} is not a positive integer"
        )
    value = numerator // (w.w1 * w.w2)
    engine = inflection_count(f)
    if engine.is_infinite or engine.value != value:
        raise ConsistencyError(
            f"closed form gives {value} but the intersection engine gives {engine.value}"
        )
    return value


def inflection_count_truncated(f: BiPoly, kind: str = "inflection") -> InterResult:
    """Count via degree-truncated data, valid for singular germs.

    For a singular f the count depends only on a finite jet: if the count of
    the degree-D truncation is v <= D, it equals the count of f.  Truncation
    keeps the reduction fast for high-degree inputs such as random coordinate
    changes.  Falls back to the exact computation when truncation never
    certifies.
    """
    counter = inflection_count if kind == "inflection" else vertex_count
    deg = f.total_degree()
    if f.is_zero or not f.vanishes_at_origin():
        return counter(f)
    fx0, fy0 = f.coefficient(1, 0), f.coefficient(0, 1)
    if fx0 or fy0:
        # Smooth germ: the jet argument needs a singular point.
        return counter(f)
    from .intersection import _fulton

    companion_builder = inflection_polynomial if kind == "inflection" else vertex_polynomial
    depth = 8
    cap = 3 * deg * deg + 16
    while depth < cap:
        ft = f.truncated(depth)
        if ft.is_zero:
            depth *= 2
            continue
        companion = companion_builder(ft, maxdeg=depth)
        if companion.is_zero or not companion.vanishes_at_origin():
            depth *= 2
            continue
        value = _fulton(ft, companion, maxdeg=depth)
        if value is not None and value <= depth:
            return InterResult(value)
        depth *= 2
    return counter(f)
