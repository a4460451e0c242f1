"""Inflection, vertex, and osculating-circle data of parametrized germs.

All quantities are orders of explicit derivative combinations of the
component series: the planar Wronskian for inflections and the numerator of
the curvature derivative for vertices.  The osculating circle of a singular
normal-form parametrization falls into three regimes according to how the
contact order n of the tangent line compares with twice the multiplicity m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .algebra import (
    IDENTICALLY_ZERO,
    INFINITE,
    BiPoly,
    Count,
    RAT,
    RAT0,
    TruncSeries,
    compose,
)
from .errors import NotNormalForm, Smooth
from .intersection import InterResult


@dataclass(frozen=True)
class Param:
    """Parametrized curve germ (x(t), y(t)) with both components vanishing at 0."""

    x: TruncSeries
    y: TruncSeries

    def validate(self) -> "Param":
        for s in (self.x, self.y):
            if s.coefficients().get(0):
                raise NotNormalForm("components must vanish at t=0")
        if self.x.is_exactly_zero and self.y.is_exactly_zero:
            raise NotNormalForm("components must not both vanish identically")
        return self

    def known_exponents(self) -> list[int]:
        return sorted(set(self.x.exponents()) | set(self.y.exponents()))

    def is_primitive(self) -> bool:
        """gcd of all appearing exponents is 1 (no hidden reparametrization t -> t^k).

        For inexact components only the stored exponents can be consulted, so
        a True answer is definitive while a False answer may be a precision
        artifact.
        """
        g = 0
        for e in self.known_exponents():
            g = math.gcd(g, e)
            if g == 1:
                return True
        return g == 1


def param_from_polynomials(x_coeffs: dict[int, object], y_coeffs: dict[int, object]) -> Param:
    return Param(TruncSeries(x_coeffs), TruncSeries(y_coeffs)).validate()


def monomial_param(m: int, n: int, a=1) -> Param:
    """The germ (t^m, a t^n)."""
    return Param(TruncSeries.monomial(m), TruncSeries.monomial(n, a)).validate()


def inflection_series(g: Param) -> TruncSeries:
    """Wronskian x'y'' - y'x''."""
    x1, y1 = g.x.diff(), g.y.diff()
    x2, y2 = x1.diff(), y1.diff()
    return x1 * y2 - y1 * x2


def vertex_series(g: Param) -> TruncSeries:
    """(x'^2+y'^2)(x'y'''-x'''y') + 3(x'x''+y'y'')(x''y'-x'y'').

    This is the numerator of the curvature derivative along the
    parametrization, so its zeros are the vertices.
    """
    x1, y1 = g.x.diff(), g.y.diff()
    x2, y2 = x1.diff(), y1.diff()
    x3, y3 = x2.diff(), y2.diff()
    speed = x1 * x1 + y1 * y1
    return speed * (x1 * y3 - x3 * y1) + 3 * (x1 * x2 + y1 * y2) * (x2 * y1 - x1 * y2)


def inflection_order(g: Param) -> Count:
    """Order of the Wronskian; infinite exactly for straight-line images."""
    g.validate()
    order = inflection_series(g).order()
    return INFINITE if order is IDENTICALLY_ZERO else order


def vertex_order(g: Param) -> Count:
    """Order of the vertex series; infinite exactly for line or circle images."""
    g.validate()
    order = vertex_series(g).order()
    return INFINITE if order is IDENTICALLY_ZERO else order


def _require_normal_form(g: Param) -> tuple[int, TruncSeries]:
    """Return (m, y) for a parametrization with x exactly t^m, m >= 1."""
    g.validate()
    xc = g.x.coefficients()
    if not g.x.exact or len(xc) != 1:
        raise NotNormalForm("x component must be exactly t^m")
    (m, c), = xc.items()
    if c != 1:
        raise NotNormalForm("x component must be exactly t^m with coefficient 1")
    return m, g.y


def first_puiseux_exponent(g: Param) -> int:
    """Smallest exponent of y(t) not divisible by m, for (t^m, y(t)) with ord y > m."""
    m, y = _require_normal_form(g)
    if m < 2:
        raise NotNormalForm("first Puiseux exponent needs a singular germ (m >= 2)")
    order = y.order()
    if order is IDENTICALLY_ZERO or order <= m:
        raise NotNormalForm("normal form requires ord(y) > m")
    for e in y.exponents():
        if e % m:
            return e
    if y.exact:
        raise NotNormalForm(
            f"all exponents divisible by {m}: the parametrization is not primitive"
        )
    from .errors import PrecisionExhausted

    raise PrecisionExhausted(
        f"no exponent indivisible by {m} below precision {y.precision}"
    )


@dataclass(frozen=True)
class CircleCoeffs:
    """Coefficients (A, B, C) of the circle A(x^2+y^2) + 2Bx + 2Cy = 0.

    A = 0 encodes a line through the origin.
    """

    A: "RAT"
    B: "RAT"
    C: "RAT"

    def as_poly(self) -> BiPoly:
        x, y = BiPoly.x(), BiPoly.y()
        return self.A * (x * x + y * y) + 2 * self.B * x + 2 * self.C * y

    @property
    def is_line(self) -> bool:
        return not self.A


@dataclass(frozen=True)
class OsculatingData:
    """Maximal-contact circle data of a singular normal-form parametrization.

    ``circle`` is the unique circle or line of maximal contact and ``contact``
    its contact order.  ``lam`` is the maximal contact among genuine circles
    (A != 0), the quantity entering the vertex-inflection relation; it differs
    from ``contact`` only when the maximal-contact object is the tangent line.
    ``tangent_line_contact`` is the contact order n of the tangent line y=0.
    """

    circle: CircleCoeffs
    contact: int
    lam: int
    tangent_line_contact: int
    degenerate: bool


def osculating_circle(g: Param) -> OsculatingData:
    """Case analysis on n versus 2m for gamma = (t^m, a t^n + ...), n > m."""
    m, y = _require_normal_form(g)
    if m == 1:
        raise Smooth("smooth germs are outside the singular osculating-circle analysis")
    n = y.order()
    if n is IDENTICALLY_ZERO or n <= m:
        raise NotNormalForm("normal form requires ord(y) > m")
    if n < 2 * m:
        return OsculatingData(
            circle=CircleCoeffs(RAT(1), RAT0, RAT0),
            contact=2 * m,
            lam=2 * m,
            tangent_line_contact=n,
            degenerate=True,
        )
    if n > 2 * m:
        return OsculatingData(
            circle=CircleCoeffs(RAT0, RAT0, RAT(1)),
            contact=n,
            lam=2 * m,
            tangent_line_contact=n,
            degenerate=False,
        )
    # n = 2m: y = t^{2m}(a + y1) with y1 vanishing at 0; the osculating circle
    # is x^2 + y^2 - y/a = 0 and the extra contact is the order of the
    # residual a t^{2m}(a + y1)^2 - y1.
    a = y.coefficient(n)
    y1 = y.shift(-n) - a
    residual = (a * TruncSeries.monomial(n)) * (y1 + a) * (y1 + a) - y1
    extra = residual.order()
    if extra is IDENTICALLY_ZERO:
        raise NotNormalForm(
            "residual series vanishes identically: the parametrization is not primitive"
        )
    lam = 2 * m + extra
    return OsculatingData(
        circle=CircleCoeffs(RAT(1), RAT0, RAT(-1) / (2 * a)),
        contact=lam,
        lam=lam,
        tangent_line_contact=n,
        degenerate=False,
    )


def verify_lambda_relation(g: Param) -> bool:
    """Check vertex order == inflection order + lambda - 3, all three computed
    independently."""
    osc = osculating_circle(g)
    i_order = inflection_order(g)
    v_order = vertex_order(g)
    if i_order is INFINITE or v_order is INFINITE:
        raise NotNormalForm("line images have no finite orders to relate")
    return v_order == i_order + osc.lam - 3


def circle_contact_order(g: Param, circle: CircleCoeffs) -> Count:
    """Order of contact of the parametrized germ with a given circle or line."""
    g.validate()
    order = compose(circle.as_poly(), g.x, g.y).order()
    return INFINITE if order is IDENTICALLY_ZERO else order
