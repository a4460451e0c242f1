"""Independent test oracles built on sympy.

These deliberately avoid the package's own machinery: signed preimage counts
for degree checks are computed by resultant elimination, exact real-root
isolation, and sign determination of algebraic numbers through minimal
polynomials and rational interval refinement.
"""

from __future__ import annotations

import sympy as sp

_X, _Y = sp.symbols("x y")


def to_sympy(poly) -> sp.Expr:
    """Convert a package polynomial to a sympy expression."""
    total = sp.Integer(0)
    for (i, j), c in poly.terms():
        total += sp.Rational(int(c.numerator), int(c.denominator)) * _X**i * _Y**j
    return sp.expand(total)


def _reduce_mod_minpoly(expr: sp.Expr, alpha) -> sp.Poly:
    z = sp.Symbol("_z")
    m = sp.minimal_polynomial(alpha, z, polys=True)
    p = sp.Poly(expr.subs(_X, z), z, domain="QQ")
    return sp.rem(p, m, domain="QQ"), m


def algebraic_sign(expr: sp.Expr, alpha) -> int:
    """Exact sign of a rational-coefficient polynomial expression in x at a
    real algebraic number."""
    if alpha.is_Rational:
        value = sp.Rational(expr.subs(_X, alpha))
        return 0 if value == 0 else (1 if value > 0 else -1)
    reduced, _ = _reduce_mod_minpoly(expr, alpha)
    if reduced.is_zero:
        return 0
    tol = sp.Rational(1, 2**24)
    while True:
        approx = alpha.eval_rational(tol)
        value = reduced.eval(approx)
        bound = sum(abs(c) for c in reduced.all_coeffs())
        slope = bound * reduced.degree() * (abs(approx) + 1) ** max(reduced.degree() - 1, 0)
        if abs(value) > slope * tol:
            return 1 if value > 0 else -1
        tol /= 2**12


def signed_preimages_even_fiber(f_expr, q_expr, e1, e2, radius) -> int:
    """Signed preimage count for pairs (f, q) with f = F(x) - y^2.

    The fiber f = e1 is y^2 = F(x) - e1 =: g(x).  When q is odd in y it
    factors as y * W(x, y^2) and each real root of the resolvent
    g * W(x, g)^2 - e2^2 carries exactly one preimage with the rational
    y-value e2 / W; when q is even in y, preimages off y = 0 come in pairs
    with opposite Jacobian signs and the count is zero, which the caller
    checks by parity.
    """
    q_odd = sp.expand(q_expr + q_expr.subs(_Y, -_Y))
    if q_odd != 0:
        raise ValueError("oracle needs a pair component odd in y")
    g = sp.expand(-(f_expr - e1).subs(_Y, 0) * -1)
    g = sp.expand((e1 - f_expr).subs(_Y, 0) * -1)
    # f = F(x) - y^2 means y^2 = F(x) - e1.
    g = sp.expand(f_expr.subs(_Y, 0) - e1)
    w = sp.expand(sp.cancel(q_expr / _Y))
    w_on_fiber = sp.expand(w.subs(_Y**2, g))
    if w_on_fiber.has(_Y):
        w_on_fiber = sp.expand(sp.Poly(w, _Y**2, x=None).as_expr())  # pragma: no cover
    resolvent = sp.expand(g * w_on_fiber**2 - e2**2)
    jac = sp.expand(
        sp.diff(f_expr, _X) * sp.diff(q_expr, _Y) - sp.diff(f_expr, _Y) * sp.diff(q_expr, _X)
    )
    total = 0
    for alpha in sp.real_roots(sp.Poly(resolvent, _X)):
        w_sign = algebraic_sign(w_on_fiber, alpha)
        if w_sign == 0:
            continue
        # Preimage (alpha, y0) with y0 = e2 / W; scale polynomials by powers
        # of W to keep everything polynomial in x before sign testing.
        y_num, y_den = e2, w_on_fiber
        # Inside the disk: alpha^2 * W^2 + e2^2 - r^2 * W^2 < 0.
        disk = sp.expand(_X**2 * w_on_fiber**2 + e2**2 - radius**2 * w_on_fiber**2)
        if algebraic_sign(disk, alpha) >= 0:
            continue
        # Jacobian sign at (alpha, e2 / W): clear the denominator with an
        # even power of W so the sign is unaffected.
        jac_poly = sp.Poly(jac, _Y)
        deg = jac_poly.degree()
        lift = max(deg + (deg % 2), 2)
        jac_cleared = sp.expand(
            sum(
                coeff * y_num ** int(k) * w_on_fiber ** (lift - int(k))
                for (k,), coeff in jac_poly.terms()
            )
        )
        jac_cleared = sp.expand(jac_cleared.subs(_Y**2, g).subs(_Y, sp.Integer(0)) if jac_cleared.has(_Y) else jac_cleared)
        sign = algebraic_sign(jac_cleared, alpha)
        if lift % 2:
            sign *= w_sign
        total += sign
    return total


def signed_preimages_graph(f_expr, q_expr, e1, e2, radius) -> int:
    """Signed preimage count for pairs (f, q) with f = y - p(x).

    The fiber is the graph y = p(x) + e1, so everything reduces to one
    variable exactly.
    """
    p = sp.expand(_Y - f_expr).subs(_Y, 0) * -1
    p = sp.expand(-(f_expr.subs(_Y, 0)))
    graph = sp.expand(p + e1)
    resolvent = sp.expand(q_expr.subs(_Y, graph) - e2)
    jac = sp.expand(
        sp.diff(f_expr, _X) * sp.diff(q_expr, _Y) - sp.diff(f_expr, _Y) * sp.diff(q_expr, _X)
    )
    jac_on_graph = sp.expand(jac.subs(_Y, graph))
    disk = sp.expand(_X**2 + graph**2 - radius**2)
    total = 0
    poly = sp.Poly(resolvent, _X)
    if poly.degree() <= 0:
        return 0
    for alpha in sp.real_roots(poly):
        if algebraic_sign(disk, alpha) >= 0:
            continue
        total += algebraic_sign(jac_on_graph, alpha)
    return total
