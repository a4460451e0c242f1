"""Topological degree of planar map pairs on small circles, and real vertex
classification.

The degree engine samples the circle at exact rational points through the
tangent-half-angle parametrization, refines adaptively until a Lipschitz
certificate proves the image of every arc stays inside a ball avoiding the
origin, and then counts signed crossings of the positive x-axis by the sample
polygon.  Conservative failures raise rather than return a wrong integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .algebra import BiPoly, RAT, RAT0, RAT1, rat
from .errors import (
    ConsistencyError,
    DegenerateVertex,
    NonConvergent,
    NotAVertex,
    ZeroOnCircle,
)
from .implicit import vertex_polynomial
from .univariate import UniPoly


@dataclass(frozen=True)
class DegreeReport:
    """Winding number of a map pair on a circle, with the sampling effort."""

    map_kind: str
    radius: "RAT"
    degree: int
    samples_used: int


def _gradient_bound(p: BiPoly, radius: "RAT") -> "RAT":
    """Bound for the gradient norm of p on the closed disk of the radius."""
    total = RAT0
    r = rat(radius)
    for (i, j), c in p.terms():
        if i + j == 0:
            continue
        mag = -c if c < 0 else c
        total += mag * (i + j) * r ** (i + j - 1)
    return total


def _circle_point(chart: int, s: "RAT", radius: "RAT") -> tuple["RAT", "RAT"]:
    s2 = s * s
    den = 1 + s2
    if chart == 0:
        return radius * (1 - s2) / den, radius * (2 * s) / den
    return radius * (s2 - 1) / den, radius * (2 * s) / den


def _initial_samples() -> list[tuple[int, "RAT"]]:
    # Chart 0 sweeps the right half circle bottom-to-top as s goes -1 -> 1;
    # chart 1 sweeps the left half top-to-bottom as s goes 1 -> -1.  The seam
    # points are kept in both charts so chart changes happen at zero-length
    # steps.
    steps = [RAT(k, 4) for k in range(-4, 5)]
    return [(0, s) for s in steps] + [(1, s) for s in reversed(steps)]


def winding_degree(
    p: BiPoly,
    q: BiPoly,
    radius,
    map_kind: str = "custom",
    max_samples: int = 200000,
) -> DegreeReport:
    """Winding number of (p, q) restricted to the circle of the given radius.

    Raises ZeroOnCircle when a sample hits an exact common zero and
    NonConvergent when the refinement cap is reached before every arc is
    certified.
    """
    radius = rat(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    lip = _gradient_bound(p, radius) + _gradient_bound(q, radius)
    samples = _initial_samples()
    values: dict[tuple[int, "RAT"], tuple["RAT", "RAT"]] = {}

    def value_at(key):
        if key not in values:
            x, y = _circle_point(key[0], key[1], radius)
            values[key] = (p.eval(x, y), q.eval(x, y))
        return values[key]

    def norm_inf(v):
        a = -v[0] if v[0] < 0 else v[0]
        b = -v[1] if v[1] < 0 else v[1]
        return a if a > b else b

    def arc_bound(a, b):
        # Both charts have |d(angle)/ds| <= 2, so arc length <= 2 r |ds|;
        # consecutive samples never straddle charts except at the shared
        # endpoints where ds = 0 on each side of the seam.
        if a[0] == b[0]:
            ds = b[1] - a[1]
            return 2 * radius * (ds if ds > 0 else -ds)
        return RAT0

    i = 0
    while i < len(samples) - 1:
        if len(samples) > max_samples:
            raise NonConvergent(
                f"subdivision exceeded {max_samples} samples at radius {radius}"
            )
        a, b = samples[i], samples[i + 1]
        va = value_at(a)
        if not va[0] and not va[1]:
            raise ZeroOnCircle(f"map pair vanishes at sample {a}")
        bound = lip * arc_bound(a, b)
        if bound < norm_inf(va):
            i += 1
            continue
        mid = (a[0], (a[1] + b[1]) / 2)
        if mid == a or mid == b:
            raise NonConvergent("subdivision bottomed out; zero too close to circle")
        samples.insert(i + 1, mid)
    last = value_at(samples[-1])
    if not last[0] and not last[1]:
        raise ZeroOnCircle(f"map pair vanishes at sample {samples[-1]}")
    points = [value_at(k) for k in samples]
    degree = _polygon_winding(points)
    return DegreeReport(map_kind=map_kind, radius=radius, degree=degree, samples_used=len(points))


def _polygon_winding(points) -> int:
    """Signed crossings of the positive x-axis by the closed sample polygon."""
    w = 0
    n = len(points)
    for idx in range(n):
        ax, ay = points[idx]
        bx, by = points[(idx + 1) % n]
        if ay < 0 <= by:
            if ax * by - ay * bx > 0:
                w += 1
        elif by < 0 <= ay:
            if ax * by - ay * bx < 0:
                w -= 1
    return w


# -- real curves with exact rational-function components -------------------------


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of univariate polynomials, for exact curve evaluation."""

    num: UniPoly
    den: UniPoly

    @classmethod
    def poly(cls, p: UniPoly) -> "RationalFunction":
        return cls(p, UniPoly.constant(1))

    def eval(self, t) -> "RAT":
        d = self.den.eval(t)
        if not d:
            raise ZeroDivisionError("curve component has a pole at the sample point")
        return self.num.eval(t) / d

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + RationalFunction(-other.num, other.den)

    def scale(self, c) -> "RationalFunction":
        return RationalFunction(self.num * c, self.den)


@dataclass(frozen=True)
class RealCurve:
    """Real plane curve with exact rational-function components."""

    x: RationalFunction
    y: RationalFunction

    @classmethod
    def from_polynomials(cls, x_coeffs: dict, y_coeffs: dict) -> "RealCurve":
        return cls(
            RationalFunction.poly(UniPoly(x_coeffs)),
            RationalFunction.poly(UniPoly(y_coeffs)),
        )

    @classmethod
    def ellipse(cls, a, b) -> "RealCurve":
        """Rational parametrization of x^2/a^2 + y^2/b^2 = 1 (s = tan(angle/2))."""
        one_plus = UniPoly({0: 1, 2: 1})
        return cls(
            RationalFunction(UniPoly({0: a, 2: -rat(a)}), one_plus),
            RationalFunction(UniPoly({1: 2 * rat(b)}), one_plus),
        )

    def point(self, t) -> tuple["RAT", "RAT"]:
        return self.x.eval(t), self.y.eval(t)


def _curvature_data(curve: RealCurve):
    x1 = curve.x.derivative()
    y1 = curve.y.derivative()
    x2, y2 = x1.derivative(), y1.derivative()
    x3, y3 = x2.derivative(), y2.derivative()
    wronskian = x1 * y2 - y1 * x2
    speed2 = x1 * x1 + y1 * y1
    vertex = speed2 * (x1 * y3 - x3 * y1) + (
        (x1 * x2 + y1 * y2) * (x2 * y1 - x1 * y2)
    ).scale(3)
    return x1, y1, wronskian, speed2, vertex


def vertex_orientation(curve: RealCurve, t0) -> str:
    """Classify a regular curve vertex as 'inward' or 'outward'.

    Inward means the curvature and its second derivative share their sign.
    The point must be regular, a genuine vertex (curvature derivative zero)
    with nonzero curvature, and nondegenerate.
    """
    t0 = rat(t0)
    x1, y1, wronskian, speed2, vertex = _curvature_data(curve)
    if not speed2.eval(t0):
        raise NotAVertex("curve is singular at the sample parameter")
    kappa_sign = wronskian.eval(t0)
    if vertex.eval(t0):
        raise NotAVertex("curvature derivative does not vanish here")
    if not kappa_sign:
        raise NotAVertex("curvature vanishes here (inflection, not vertex)")
    second = vertex.derivative().eval(t0)
    if not second:
        raise DegenerateVertex("second derivative of curvature vanishes")
    return "inward" if kappa_sign * second > 0 else "outward"


def _sylvester_resultant(a: list[BiPoly], b: list[BiPoly]) -> BiPoly:
    """Resultant of two polynomials in t with BiPoly coefficients
    (coefficient lists ascending in t)."""
    from .branches import _det_bipoly

    da, db = len(a) - 1, len(b) - 1
    size = da + db
    matrix = [[BiPoly.zero() for _ in range(size)] for _ in range(size)]
    for row in range(db):
        for k, coeff in enumerate(a):
            matrix[row][row + (da - k)] = coeff
    for row in range(da):
        for k, coeff in enumerate(b):
            matrix[db + row][row + (db - k)] = coeff
    return _det_bipoly(matrix)


def implicit_from_polynomial_curve(curve: RealCurve) -> BiPoly:
    """Defining polynomial of a polynomially parametrized curve, by resultant."""
    if not curve.x.den.is_constant or not curve.y.den.is_constant:
        raise ConsistencyError("resultant implicitization needs polynomial components")
    xs = curve.x.num * (RAT1 / curve.x.den.coefficient(0))
    ys = curve.y.num * (RAT1 / curve.y.den.coefficient(0))
    # x - x(t) and y - y(t) as polynomials in t with BiPoly coefficients.
    xs_c = xs.coefficients()
    ys_c = ys.coefficients()
    da = max(xs_c) if xs_c else 0
    db = max(ys_c) if ys_c else 0
    a = [BiPoly.constant(-xs_c.get(k, RAT0)) for k in range(da + 1)]
    a[0] = a[0] + BiPoly.x()
    b = [BiPoly.constant(-ys_c.get(k, RAT0)) for k in range(db + 1)]
    b[0] = b[0] + BiPoly.y()
    return _sylvester_resultant(a, b).content_free()


def index_consistency(
    curve: RealCurve,
    t0,
    f: Optional[BiPoly] = None,
    radius=None,
) -> dict:
    """Compare the local degree of (f, vertex polynomial) at a vertex with the
    sign predicted by the orientation classification.

    The defining polynomial is derived by resultant for polynomial curves or
    supplied by the caller; its sign is normalized so the gradient at the
    vertex points along the rightward normal of the parametrization, which is
    the frame in which inward vertices on positively curved arcs have index
    +1.  Returns a dict with the classification, predicted index, computed
    degree, and agreement flag.
    """
    t0 = rat(t0)
    orientation = vertex_orientation(curve, t0)
    x1, y1, _, _, vertex = _curvature_data(curve)
    predicted = 1 if vertex.derivative().eval(t0) > 0 else -1
    if f is None:
        f = implicit_from_polynomial_curve(curve)
    px, py = curve.point(t0)
    f_local = f.subs_poly(
        BiPoly.x() + BiPoly.constant(px), BiPoly.y() + BiPoly.constant(py)
    )
    if f_local.constant_term():
        raise ConsistencyError("supplied polynomial does not vanish at the vertex")
    normal = (y1.eval(t0), -x1.eval(t0))
    grad = (f_local.coefficient(1, 0), f_local.coefficient(0, 1))
    alignment = grad[0] * normal[0] + grad[1] * normal[1]
    if not alignment:
        raise ConsistencyError("gradient does not resolve the co-orientation")
    if alignment < 0:
        f_local = -f_local
    v_local = vertex_polynomial(f_local)
    radii = [rat(radius)] if radius is not None else [RAT(1, 2 ** k) for k in range(3, 9)]
    report = None
    for r in radii:
        try:
            report = winding_degree(f_local, v_local, r, map_kind="vertex_pair")
            break
        except (ZeroOnCircle, NonConvergent):
            continue
    if report is None:
        raise NonConvergent("no sample radius could be certified")
    return {
        "orientation": orientation,
        "predicted_index": predicted,
        "degree": report.degree,
        "radius": report.radius,
        "consistent": report.degree == predicted,
    }
