"""Local intersection multiplicity at the origin and derived invariants.

The engine is the axiomatic reduction for intersection numbers: subtract
multiples of one curve from the other to drive down the degree of the trace
on the x-axis, split off y factors, and sum the pieces.  Only exact rational
arithmetic is used; infinite intersections are detected once, up front, by a
bivariate gcd, and returned as values with a certificate rather than raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .algebra import INFINITE, BiPoly, Count, RAT0, _Infinite, is_infinite, strip_content
from .errors import ConsistencyError, NotThroughOrigin, NotYGeneral
from .univariate import UniPoly, uni_gcd, uni_gcd_many


@dataclass(frozen=True)
class InterResult:
    """Intersection number at the origin, possibly infinite with a witness.

    When ``value`` is infinite, ``certificate`` is a nonconstant common factor
    of the two inputs vanishing at the origin.
    """

    value: Count
    certificate: Optional[BiPoly] = None

    @property
    def is_infinite(self) -> bool:
        return is_infinite(self.value)

    def expect_finite(self) -> int:
        if self.is_infinite:
            raise ConsistencyError("intersection number unexpectedly infinite")
        return self.value  # type: ignore[return-value]


def multiplicity(f: BiPoly) -> int:
    """Least total degree of a term of f (the multiplicity at the origin)."""
    if f.is_zero:
        raise ValueError("multiplicity of the zero polynomial is undefined")
    if not f.vanishes_at_origin():
        raise NotThroughOrigin("curve does not pass through the origin")
    return f.min_total_degree()  # type: ignore[return-value]


def tangent_cone(f: BiPoly) -> BiPoly:
    """Homogeneous part of lowest degree."""
    return f.homogeneous_part(multiplicity(f))


def tangent_cones_transverse(f: BiPoly, g: BiPoly) -> bool:
    """True when the tangent cones share no linear factor over the complexes.

    Two rational homogeneous binary forms share a complex linear factor
    exactly when their gcd over the rationals is nonconstant.
    """
    d = bipoly_gcd(tangent_cone(f), tangent_cone(g))
    return d.is_constant


# -- bivariate gcd ------------------------------------------------------------


def _y_rows(f: BiPoly) -> dict[int, UniPoly]:
    rows: dict[int, dict[int, object]] = {}
    for (i, j), c in f.terms():
        rows.setdefault(j, {})[i] = c
    return {j: UniPoly(row) for j, row in rows.items()}


def _from_y_rows(rows: dict[int, UniPoly]) -> BiPoly:
    terms = {}
    for j, p in rows.items():
        for i, c in p.coefficients().items():
            terms[(i, j)] = c
    return BiPoly(terms)


def _y_content(f: BiPoly) -> UniPoly:
    return uni_gcd_many(_y_rows(f).values())


def _mul_xpoly(f: BiPoly, u: UniPoly) -> BiPoly:
    return f * _from_y_rows({0: u})


def _div_xpoly(f: BiPoly, u: UniPoly) -> BiPoly:
    rows = _y_rows(f)
    return _from_y_rows({j: p.exact_div(u) for j, p in rows.items()})


def _y_primitive(f: BiPoly) -> tuple[UniPoly, BiPoly]:
    cont = _y_content(f)
    return cont, _div_xpoly(f, cont)


def _pseudo_rem_y(a: BiPoly, b: BiPoly) -> BiPoly:
    """Pseudo-remainder of a by b as polynomials in y over Q[x]."""
    db = b.degree_in("y")
    lc_b = _y_rows(b)[db]
    r = a
    while not r.is_zero and r.degree_in("y") >= db:
        dr = r.degree_in("y")
        lc_r = _y_rows(r)[dr]
        r = _mul_xpoly(r, lc_b) - _mul_xpoly(b, lc_r) * BiPoly.monomial(0, dr - db)
    return r


def _x_rows(f: BiPoly) -> dict[int, UniPoly]:
    """Coefficients of powers of x, as polynomials in y."""
    rows: dict[int, dict[int, object]] = {}
    for (i, j), c in f.terms():
        rows.setdefault(i, {})[j] = c
    return {i: UniPoly(row) for i, row in rows.items()}


def _eval_y(f: BiPoly, c) -> UniPoly:
    """f(x, c) as a polynomial in x."""
    out: dict[int, object] = {}
    from .algebra import RAT0, rat

    cv = rat(c)
    for (i, j), coeff in f.terms():
        out[i] = out.get(i, RAT0) + coeff * cv**j
    return UniPoly(out)


def gcd_is_certified_trivial(f: BiPoly, g: BiPoly) -> bool:
    """Certified test that gcd(f, g) is constant.

    True is a proof of coprimality: the x-wise and y-wise contents are
    coprime, and at deg+1 distinct evaluation points the univariate gcds in x
    are constant, which no x-dependent common factor survives.  False only
    means a common factor is possible; the caller then runs the full gcd.
    """
    if f.is_zero or g.is_zero:
        return False
    cy = uni_gcd(uni_gcd_many(_x_rows(f).values()), uni_gcd_many(_x_rows(g).values()))
    if not cy.is_constant:
        return False
    cx = uni_gcd(_y_content(f), _y_content(g))
    if not cx.is_constant:
        return False
    bound = min(f.degree_in("y"), g.degree_in("y"))
    for c in range(1, bound + 2):
        u = uni_gcd(_eval_y(f, c), _eval_y(g, c))
        if not u.is_constant:
            return False
    return True


def bipoly_gcd(f: BiPoly, g: BiPoly) -> BiPoly:
    """Greatest common divisor over the rationals, canonically normalized.

    Normalization: integer coefficients, content 1, positive leading term in
    graded lexicographic order.  gcd(0, g) = g.
    """
    if f.is_zero:
        return g.content_free()
    if g.is_zero:
        return f.content_free()
    if f.degree_in("y") == 0 and g.degree_in("y") == 0:
        u = uni_gcd(_y_rows(f)[0], _y_rows(g)[0])
        return _from_y_rows({0: u}).content_free()
    cont_f, pf = _y_primitive(f)
    cont_g, pg = _y_primitive(g)
    cont = uni_gcd(cont_f, cont_g)
    a, b = (pf, pg) if pf.degree_in("y") >= pg.degree_in("y") else (pg, pf)
    while not b.is_zero and b.degree_in("y") > 0:
        r = _pseudo_rem_y(a, b)
        a, b = b, (_y_primitive(r)[1] if not r.is_zero else BiPoly.zero())
    if b.is_zero:
        core = a
    else:
        # PRS dropped to a nonzero element of Q[x]: the primitive parts are
        # coprime in y, so only the x-contents can be shared.
        core = BiPoly.constant(1)
    return (_mul_xpoly(core, cont)).content_free()


def divides(d: BiPoly, f: BiPoly) -> bool:
    """Exact divisibility test via multivariate division."""
    if d.is_zero:
        return f.is_zero
    try:
        exact_poly_div(f, d)
        return True
    except ValueError:
        return False


def exact_poly_div(f: BiPoly, d: BiPoly) -> BiPoly:
    """Exact quotient f / d; raises ValueError when the division is inexact."""
    from .algebra import grlex_key

    if d.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = max(d.term_map(), key=grlex_key)
    lc = d.coefficient(*lead)
    q: dict[tuple[int, int], object] = {}
    r = f
    while not r.is_zero:
        rl = max(r.term_map(), key=grlex_key)
        i, j = rl[0] - lead[0], rl[1] - lead[1]
        if i < 0 or j < 0:
            raise ValueError("inexact polynomial division")
        c = r.coefficient(*rl) / lc
        q[(i, j)] = c
        r = r - d * BiPoly.monomial(i, j, c)
    return BiPoly(q)


# -- the reduction engine ------------------------------------------------------


def intersection_multiplicity(f: BiPoly, g: BiPoly) -> InterResult:
    """Local intersection number of f and g at the origin.

    Returns 0 when either curve misses the origin and an infinite result with
    a gcd certificate when the curves share a component through the origin.
    """
    if f.is_zero and g.is_zero:
        return InterResult(INFINITE, BiPoly.x())
    if f.is_zero or g.is_zero:
        other = g if f.is_zero else f
        if other.vanishes_at_origin():
            return InterResult(INFINITE, other.content_free())
        return InterResult(0)
    if not f.vanishes_at_origin() or not g.vanishes_at_origin():
        return InterResult(0)
    value = _certified_fulton(f, g)
    if value is not None:
        return InterResult(value)
    # The ladder exhausted the Bezout bound, so the intersection is infinite
    # and a common factor through the origin exists; extract it.
    d = bipoly_gcd(f, g)
    if d.is_constant or not d.vanishes_at_origin():
        raise ConsistencyError("uncertified finite intersection with trivial gcd")
    return InterResult(INFINITE, d)


def _certified_fulton(f: BiPoly, g: BiPoly) -> Optional[int]:
    """Intersection number via a self-certifying truncation ladder.

    A value v computed with all data truncated past total degree D equals the
    true intersection number whenever v <= D, because truncation perturbs the
    generators within the (D+1)-st power of the maximal ideal, which cannot
    change an intersection number <= D.  A finite intersection number never
    exceeds the Bezout product of the total degrees, so once the ladder passes
    that bound without certifying, the number is infinite and None is
    returned.  No gcd computation is needed on the finite path.
    """
    bezout = f.total_degree() * g.total_degree()
    depth = 8
    while True:
        value = _fulton(f, g, maxdeg=depth)
        if value is not None and value <= depth:
            return value
        if depth > bezout:
            return None
        depth *= 2


def _x_trace(f: BiPoly) -> UniPoly:
    return UniPoly(f.x_axis_part())


def _fulton(f: BiPoly, g: BiPoly, maxdeg: Optional[int] = None) -> Optional[int]:
    """Degree-reducing computation, valid when no shared component passes
    through the origin.

    Works on integer-primitive associates and strips the rational content of
    the reduced polynomial after every step: scaling by nonzero constants
    leaves the intersection number unchanged, and without the stripping the
    coefficients grow out of control on dense inputs.

    With ``maxdeg`` every intermediate result is truncated past that total
    degree; the caller must certify the answer (valid only when it does not
    exceed maxdeg) and receives None when truncation destroyed the data.
    The hot loop runs on plain term dictionaries.
    """
    total = 0
    fd = f.term_map()
    gd = g.term_map()
    if maxdeg is not None:
        fd = {e: c for e, c in fd.items() if e[0] + e[1] <= maxdeg}
        gd = {e: c for e, c in gd.items() if e[0] + e[1] <= maxdeg}
    fd = strip_content(fd)
    gd = strip_content(gd)
    while True:
        if maxdeg is not None and total > maxdeg:
            # Certification at this depth is already impossible; bail so that
            # pairs with a shared component cannot loop forever.
            return None
        if not fd or not gd:
            if maxdeg is None:
                raise ConsistencyError("zero input in exact reduction")
            return None
        if (0, 0) in fd or (0, 0) in gd:
            return total
        r = max((i for (i, j) in fd if j == 0), default=None)
        s = max((i for (i, j) in gd if j == 0), default=None)
        if r is None and s is None:
            if maxdeg is None:
                raise ConsistencyError("y divides both inputs in exact reduction")
            return None
        if r is None:
            fd, gd = gd, fd
            r, s = s, r
        if s is None:
            # g = y*h: m(f, y) = order of f on the x-axis.
            total += min(i for (i, j) in fd if j == 0)
            gd = {(i, j - 1): c for (i, j), c in gd.items()}
            continue
        if r > s:
            fd, gd = gd, fd
            r, s = s, r
        # Kill the top x-degree of g on the axis; the intersection number is
        # invariant under g -> a*g + h*f for a constant a != 0.
        lcf = fd[(r, 0)]
        lcg = gd[(s, 0)]
        k = s - r
        out = {e: c * lcf for e, c in gd.items()}
        for (i, j), c in fd.items():
            e = (i + k, j)
            if maxdeg is not None and i + k + j > maxdeg:
                continue
            v = out.get(e)
            if v is None:
                out[e] = -c * lcg
            else:
                v = v - c * lcg
                if v:
                    out[e] = v
                else:
                    del out[e]
        gd = strip_content(out)


def milnor_number(f: BiPoly) -> Count:
    """Milnor number as the intersection number of the partial derivatives.

    Infinite output signals a non-isolated singularity.
    """
    if f.is_zero:
        return INFINITE
    if not f.vanishes_at_origin():
        raise NotThroughOrigin("Milnor number is taken at the origin")
    return intersection_multiplicity(f.diff("x"), f.diff("y")).value


def teissier_value(f: BiPoly) -> int:
    """m(f, f_y), checked against the Milnor-plus-trace identity.

    For f through the origin with f(0, y) of finite order m the value must
    equal milnor(f) + m - 1; a mismatch raises ConsistencyError.
    """
    if f.is_zero:
        raise ValueError("zero polynomial")
    if not f.vanishes_at_origin():
        raise NotThroughOrigin("curve does not pass through the origin")
    y_trace = UniPoly({j: c for (i, j), c in f.terms() if i == 0})
    if y_trace.is_zero:
        raise NotYGeneral("f(0, y) vanishes identically")
    m = y_trace.order()
    value = intersection_multiplicity(f, f.diff("y")).expect_finite()
    mu = milnor_number(f)
    if is_infinite(mu) or value != mu + m - 1:
        raise ConsistencyError(
            f"m(f, f_y) = {value} but milnor + ord f(0,y) - 1 = {mu} + {m} - 1"
        )
    return value
