"""Exact local invariants of singular plane curve germs.

The package computes, over exact rational arithmetic, the classical local
invariants of a plane curve germ given implicitly (f(x,y)=0) or
parametrically (x(t), y(t)): intersection multiplicities, Milnor numbers,
inflection and vertex counts with infinity certificates, Puiseux branch data,
contact sets, osculating-circle contact, and real topological degrees -- and
machine-checks the identities relating them.
"""

from .algebra import (
    BiPoly,
    Count,
    DEFAULT_PRECISION,
    IDENTICALLY_ZERO,
    INFINITE,
    PRECISION_CAP,
    RAT,
    TruncSeries,
    compose,
    is_infinite,
    rat,
    with_precision_retry,
)
from .errors import *  # noqa: F401,F403 -- the error module defines __all__-safe names only
from .implicit import (
    InvariantReport,
    Weights,
    analyze_implicit,
    count_from_factors,
    inflection_count,
    inflection_polynomial,
    is_ordinary_inflection,
    is_ordinary_vertex,
    quasihomogeneous_inflection_count,
    vertex_count,
    vertex_polynomial,
)
from .intersection import (
    InterResult,
    bipoly_gcd,
    divides,
    intersection_multiplicity,
    milnor_number,
    multiplicity,
    tangent_cone,
    tangent_cones_transverse,
    teissier_value,
)
from .parametric import (
    CircleCoeffs,
    OsculatingData,
    Param,
    first_puiseux_exponent,
    inflection_order,
    monomial_param,
    osculating_circle,
    verify_lambda_relation,
    vertex_order,
)
from .parsing import parse_param, parse_poly, render_param, render_poly, render_series
