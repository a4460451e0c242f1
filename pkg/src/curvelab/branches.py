"""Newton polygon, rational branch expansion, implicitization, delta invariant.

Branches of f = 0 through the origin are computed by the Newton polygon
method: each edge of slope -p/q contributes branches y ~ u x^{p/q}, where u
runs over q-th roots of the roots of the edge's characteristic polynomial.
Expansion proceeds only while those roots stay rational; otherwise
ExtensionRequired names the offending polynomial.  Branches tangent to the
y-axis are expanded with the variable roles swapped, so every parametrization
comes out with one component exactly a power of t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .algebra import (
    DEFAULT_PRECISION,
    BiPoly,
    RAT,
    RAT0,
    RAT1,
    TruncSeries,
    compose,
    is_infinite,
    rat,
)
from .errors import (
    ConsistencyError,
    ExtensionRequired,
    NonIsolated,
    NotIrreducible,
    NotNormalForm,
    NotThroughOrigin,
    OddMilnor,
    PrecisionExhausted,
)
from .intersection import bipoly_gcd, exact_poly_div, milnor_number, multiplicity
from .parametric import Param
from .univariate import UniPoly, rational_nth_root

_MAX_EXPANSION_DEPTH = 64


@dataclass(frozen=True)
class BranchData:
    """One irreducible branch through the origin.

    ``param`` parametrizes the branch in the original (x, y) coordinates.
    When ``swapped`` is set the normal form (t^m, series) lives in the
    coordinates with x and y exchanged; ``normal_param`` returns it.  ``beta``
    is None exactly for smooth branches.
    """

    m: int
    beta: Optional[int]
    tangent: tuple["RAT", "RAT"]
    param: Optional[Param]
    swapped: bool = False

    def normal_param(self) -> Param:
        if self.param is None:
            raise NotNormalForm("branch has no rational parametrization")
        if self.swapped:
            return Param(self.param.y, self.param.x)
        return self.param

    @property
    def smooth(self) -> bool:
        return self.m == 1


# -- Newton polygon ------------------------------------------------------------


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Vertices of the lower-left convex hull, by increasing i."""
    best: dict[int, int] = {}
    for i, j in points:
        if i not in best or j < best[i]:
            best[i] = j
    pts = sorted(best.items())
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            cross = (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _polygon_edges(f: BiPoly) -> list[tuple[int, int, int, list[tuple[int, int]]]]:
    """Edges (p, q, N, points) of the Newton polygon with negative slope.

    Each edge supports exponents with q*i + p*j = N minimal, gcd(p, q) = 1;
    points lists every support point on the edge.
    """
    support = sorted(f.support())
    hull = _lower_hull(support)
    edges = []
    for (i0, j0), (i1, j1) in zip(hull, hull[1:]):
        di, dj = i1 - i0, j0 - j1
        if di <= 0 or dj <= 0:
            continue
        g = math.gcd(di, dj)
        p, q = di // g, dj // g
        n = q * i0 + p * j0
        pts = [(i, j) for (i, j) in support if q * i + p * j == n]
        edges.append((p, q, n, pts))
    return edges


def newton_polygon(f: BiPoly) -> list[tuple["RAT", int]]:
    """Negative-slope segments of the support hull as (slope, lattice length).

    Slope is the x-exponent change per unit of y-exponent drop (so the cusp
    x^2 - y^3 gives -2/3); length is the number of unit lattice steps on the
    segment.
    """
    if f.is_zero:
        raise ValueError("zero polynomial has no Newton polygon")
    if not f.vanishes_at_origin():
        raise NotThroughOrigin("curve does not pass through the origin")
    out = []
    for p, q, _, pts in _polygon_edges(f):
        (i0, j0), (i1, j1) = pts[0], pts[-1]
        length = math.gcd(i1 - i0, j0 - j1)
        out.append((RAT(-p, q), length))
    return out


# -- expansion -----------------------------------------------------------------


def _render_characteristic(phi: UniPoly, var: str = "c") -> str:
    bits = []
    for k in sorted(phi.coefficients(), reverse=True):
        c = phi.coefficient(k)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono:
            piece = mono if c == 1 else (f"-{mono}" if c == -1 else f"{c}*{mono}")
        else:
            piece = str(c)
        bits.append(piece)
    return " + ".join(bits).replace("+ -", "- ")


def _edge_substitute(g: BiPoly, p: int, q: int, u0: "RAT", n: int) -> BiPoly:
    """g(x^q, x^p (u0 + y)) / x^n as a polynomial."""
    max_j = g.degree_in("y")
    shifted = [UniPoly.constant(1)]
    base = UniPoly({0: u0, 1: 1})
    for _ in range(max_j):
        shifted.append(shifted[-1] * base)
    terms: dict[tuple[int, int], RAT] = {}
    for (i, j), c in g.terms():
        e = q * i + p * j - n
        if e < 0:
            raise ConsistencyError("edge level was not minimal")
        for k, b in shifted[j].coefficients().items():
            key = (e, k)
            s = terms.get(key, RAT0) + c * b
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
    return BiPoly(terms)


def _series_inverse(s: TruncSeries, precision: int) -> TruncSeries:
    """Multiplicative inverse of a unit series, to the given precision."""
    a0 = s.coefficients().get(0, RAT0)
    if not a0:
        raise ValueError("series is not a unit")
    coeffs = {0: RAT1 / a0}
    src = s.coefficients()
    for k in range(1, precision):
        acc = RAT0
        for i, ai in src.items():
            if 0 < i <= k:
                b = coeffs.get(k - i)
                if b is not None:
                    acc += ai * b
        if acc:
            coeffs[k] = -acc / a0
    return TruncSeries(coeffs, precision)


def _hensel_series(g: BiPoly, precision: int) -> TruncSeries:
    """The unique series y(x) with y(0) = 0 and g(x, y(x)) = 0.

    Requires dg/dy nonzero at the origin.  Newton iteration doubles the
    number of correct terms per step regardless of the starting tail, so the
    loop runs at full precision from the start.
    """
    gy = g.diff("y")
    if not gy.coefficient(0, 0):
        raise ConsistencyError("Hensel step requires a simple root")
    if all(j > 0 for (_, j) in g.support()):
        # y divides g: the solution is exactly zero.
        return TruncSeries.zero()
    t = TruncSeries.monomial(1, 1, precision=precision)
    y = TruncSeries.zero(precision=precision)
    correct = 1
    while correct < precision:
        value = compose(g, t, y)
        deriv = compose(gy, t, y)
        y = y - value * _series_inverse(deriv, precision)
        correct *= 2
    return y


def _branches_of(
    g: BiPoly, precision: int, top_filter: Optional[str], depth: int = 0
) -> list[tuple[int, TruncSeries]]:
    """Expand all branches y(x) of g through the origin.

    Returns pairs (ramification Q, series Y) describing branches
    (t^Q, Y(t)).  ``top_filter`` restricts the first polygon to edges with
    exponent >= 1 ('direct') or > 1 ('swapped'); recursion levels see every
    edge.
    """
    if depth > _MAX_EXPANSION_DEPTH:
        raise ConsistencyError("branch expansion recursion exceeded its depth cap")
    results: list[tuple[int, TruncSeries]] = []
    if all(j > 0 for (_, j) in g.support()):
        # The y = 0 branch; impossible at the top level (axes pulled out).
        results.append((1, TruncSeries.zero()))
        g = g.divide_out_monomial(0, 1)
    if g.is_zero or not g.vanishes_at_origin():
        return results
    for p, q, n, pts in _polygon_edges(g):
        if top_filter == "direct" and p < q:
            continue
        if top_filter == "swapped" and p <= q:
            continue
        if top_filter == "vertical" and p >= q:
            continue
        j_min = min(j for _, j in pts)
        j_max = max(j for _, j in pts)
        phi = UniPoly({(j - j_min) // q: g.coefficient(i, j) for i, j in pts})
        roots = [(r, mult) for r, mult in phi.rational_roots() if r]
        accounted = sum(mult for _, mult in roots)
        if accounted < (j_max - j_min) // q:
            raise ExtensionRequired(_render_characteristic(phi))
        for c0, mult in roots:
            u0 = rational_nth_root(c0, q)
            if u0 is None:
                raise ExtensionRequired(
                    _render_characteristic(UniPoly({q: 1, 0: -c0}), var="u")
                )
            g1 = _edge_substitute(g, p, q, u0, n)
            if mult == 1 or g1.coefficient(0, 1):
                subs = [(1, _hensel_series(g1, precision))]
            else:
                subs = _branches_of(g1, precision, None, depth + 1)
            for ram, ys in subs:
                # x = s^{q*ram}, y = s^{p*ram} (u0 + ys(s)); the shift keeps
                # the full precision window of ys.
                results.append((q * ram, (ys + u0).shift(p * ram)))
    return results


def _beta_of(m: int, series: TruncSeries) -> Optional[int]:
    """First exponent not divisible by m, scanning known coefficients."""
    if m == 1:
        return None
    for e in series.exponents():
        if e % m:
            return e
    if series.exact:
        raise ConsistencyError("imprimitive branch parametrization")
    raise PrecisionExhausted(
        f"no exponent indivisible by {m} below precision {series.precision}"
    )


def _package_direct(ram: int, ys: TruncSeries) -> BranchData:
    m = ram
    lead = ys.coefficients().get(m, RAT0)
    tangent = (RAT1, lead) if lead else (RAT1, RAT0)
    return BranchData(
        m=m,
        beta=_beta_of(m, ys),
        tangent=tangent,
        param=Param(TruncSeries.monomial(ram, 1), ys),
        swapped=False,
    )


def _package_swapped(ram: int, xs: TruncSeries) -> BranchData:
    return BranchData(
        m=ram,
        beta=_beta_of(ram, xs),
        tangent=(RAT0, RAT1),
        param=Param(xs, TruncSeries.monomial(ram, 1)),
        swapped=True,
    )


def _package_vertical_fallback(ram: int, ys: TruncSeries) -> BranchData:
    """Vertical-tangent branch whose normal form is irrational but whose
    direct expansion (t^Q, c t^m) is a rational pure monomial pair.

    The first Puiseux exponent is still readable: normalizing such a pair
    only rescales t, which never changes exponent sets.
    """
    yc = ys.coefficients()
    if not ys.exact or len(yc) != 1:
        raise ExtensionRequired("normal form of a vertical-tangent branch")
    (m,) = yc.keys()
    if math.gcd(m, ram) != 1:
        raise ConsistencyError("imprimitive vertical-tangent branch")
    return BranchData(
        m=m,
        beta=ram,
        tangent=(RAT0, RAT1),
        param=Param(TruncSeries.monomial(ram, 1), ys),
        swapped=True,
    )


def _is_squarefree_at_origin(f: BiPoly) -> bool:
    d = bipoly_gcd(f, bipoly_gcd(f.diff("x"), f.diff("y")))
    return d.is_constant or not d.vanishes_at_origin()


def rational_branches(f: BiPoly, precision: Optional[int] = None) -> list[BranchData]:
    """All irreducible branches of f = 0 through the origin, with rational
    parametrizations.

    Raises ExtensionRequired as soon as any Newton-Puiseux step needs an
    irrational root, and NonIsolated when f has a repeated factor through the
    origin.
    """
    precision = precision or DEFAULT_PRECISION
    if f.is_zero:
        raise ValueError("zero polynomial")
    if not f.vanishes_at_origin():
        raise NotThroughOrigin("curve does not pass through the origin")
    if not _is_squarefree_at_origin(f):
        raise NonIsolated("repeated factor through the origin")
    branches: list[BranchData] = []
    core = f
    if all(i > 0 for (i, _) in core.support()):
        branches.append(
            BranchData(
                m=1,
                beta=None,
                tangent=(RAT0, RAT1),
                param=Param(TruncSeries.zero(), TruncSeries.monomial(1, 1)),
                swapped=True,
            )
        )
        core = core.divide_out_monomial(1, 0)
    if all(j > 0 for (_, j) in core.support()):
        branches.append(
            BranchData(
                m=1,
                beta=None,
                tangent=(RAT1, RAT0),
                param=Param(TruncSeries.monomial(1, 1), TruncSeries.zero()),
                swapped=False,
            )
        )
        core = core.divide_out_monomial(0, 1)
    if not core.is_constant and core.vanishes_at_origin():
        for ram, ys in _branches_of(core, precision, "direct"):
            branches.append(_package_direct(ram, ys))
        # Vertical-tangent branches: prefer the swapped frame, where the
        # normal form is (t^m, x(t)); when that frame needs an extension,
        # retry the direct frame and accept pure-monomial pairs, for which
        # the Puiseux data is still rational.
        try:
            swapped_found = [
                _package_swapped(ram, xs)
                for ram, xs in _branches_of(core.swap_variables(), precision, "swapped")
            ]
        except ExtensionRequired as err:
            swapped_found = None
            swapped_error = err
        if swapped_found is not None:
            branches.extend(swapped_found)
        else:
            try:
                branches.extend(
                    _package_vertical_fallback(ram, ys)
                    for ram, ys in _branches_of(core, precision, "vertical")
                )
            except ExtensionRequired:
                raise swapped_error
    branches.sort(key=lambda b: (b.swapped, str(b.tangent), b.m, b.beta or 0))
    return branches


# -- implicitization -----------------------------------------------------------


def _det_bipoly(matrix: list[list[BiPoly]]) -> BiPoly:
    """Fraction-free Bareiss determinant over the polynomial ring."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    sign = 1
    prev = BiPoly.constant(1)
    for k in range(n - 1):
        if m[k][k].is_zero:
            for swap in range(k + 1, n):
                if not m[swap][k].is_zero:
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return BiPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_poly_div(num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def implicitize(g: Param) -> BiPoly:
    """Defining polynomial of the curve traced by (t^m, y(t)), y polynomial.

    Computed as the characteristic polynomial of multiplication by y(t) on
    the quotient by t^m - x; the result is monic of degree m in y and
    vanishes exactly on the parametrized branch.
    """
    g.validate()
    xc = g.x.coefficients()
    if not g.x.exact or len(xc) != 1 or list(xc.values())[0] != 1:
        raise NotNormalForm("x component must be exactly t^m")
    if not g.y.exact:
        raise NotNormalForm("y component must be an exact polynomial")
    if not g.is_primitive():
        raise NotNormalForm("parametrization must be primitive")
    (m,) = xc.keys()
    # Multiplication-by-y(t) matrix on the basis 1, t, ..., t^{m-1} with
    # t^m = x.
    mat = [[BiPoly.zero() for _ in range(m)] for _ in range(m)]
    for c in range(m):
        for e, b in g.y.coefficients().items():
            total = e + c
            mat[total % m][c] = mat[total % m][c] + BiPoly.monomial(total // m, 0, b)
    for c in range(m):
        mat[c][c] = mat[c][c] - BiPoly.y()
    f = _det_bipoly(mat)
    lead = f.coefficient(0, m)
    if lead == -1:
        f = -f
    elif lead != 1:
        raise ConsistencyError("implicitization is not monic in y")
    if not compose(f, g.x, g.y).is_exactly_zero:
        raise ConsistencyError("implicit equation does not annihilate the parametrization")
    if multiplicity(f) != min(m, g.y.order() if g.y.exponents() else m):
        raise ConsistencyError("implicitization multiplicity mismatch")
    return f


def delta_invariant(f: BiPoly) -> int:
    """Half the Milnor number, for an irreducible germ.

    Refuses when the branch expansion needs a field extension (then
    irreducibility over the complexes is undecided here).
    """
    branch_list = rational_branches(f)
    if len(branch_list) != 1:
        raise NotIrreducible(f"{len(branch_list)} branches through the origin")
    mu = milnor_number(f)
    if is_infinite(mu):
        raise NonIsolated("infinite Milnor number")
    if mu % 2:
        raise OddMilnor(f"Milnor number {mu} is odd")
    return mu // 2
