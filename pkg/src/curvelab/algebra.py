"""Exact arithmetic core: rationals, sparse bivariate polynomials, truncated series.

Coefficients are exact rationals throughout (gmpy2.mpq when available,
``fractions.Fraction`` otherwise) because every quantity the package computes
is an integer-valued order or multiplicity; a single rounding error would be
fatal.  Polynomials are sparse exponent maps ``{(i, j): coefficient}``; series
are exponent maps with a tracked truncation precision so that an order query
can tell "zero so far" apart from "identically zero".
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Iterator, Mapping, Optional, TypeVar, Union

from .errors import PrecisionExhausted

try:
    from gmpy2 import mpq as RAT
    from gmpy2 import gcd as int_gcd
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as RAT
    from math import gcd as int_gcd

RAT0 = RAT(0)
RAT1 = RAT(1)

#: Default truncation for series produced by iterative expansions.
DEFAULT_PRECISION = 64
#: Hard ceiling for automatic precision doubling.
PRECISION_CAP = 4096

T = TypeVar("T")


def rat(value) -> "RAT":
    """Coerce ints, strings like '3/4', and rationals to the coefficient type."""
    if type(value) is type(RAT0):
        return value
    return RAT(value)


class _Infinite:
    """Singleton standing for an infinite count or multiplicity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "infinite"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("curvelab-infinite")


class _IdenticallyZero:
    """Singleton order of the exactly-zero series."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "identically-zero"


INFINITE = _Infinite()
IDENTICALLY_ZERO = _IdenticallyZero()

#: A count that may be infinite.
Count = Union[int, _Infinite]


def is_infinite(value) -> bool:
    return value is INFINITE


def grlex_key(exponent: tuple[int, int]) -> tuple[int, int]:
    """Sort key for graded lexicographic order with x before y."""
    i, j = exponent
    return (i + j, i)


class BiPoly:
    """Sparse bivariate polynomial with exact rational coefficients.

    Immutable after construction; zero coefficients are never stored, and the
    zero polynomial has an empty term map.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[tuple[int, int], object]] = None):
        cleaned: dict[tuple[int, int], RAT] = {}
        if terms:
            for (i, j), c in terms.items():
                c = rat(c)
                if c:
                    cleaned[(int(i), int(j))] = c
        self._terms = cleaned

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    # -- inspection ---------------------------------------------------------

    def terms(self) -> Iterator[tuple[tuple[int, int], "RAT"]]:
        return iter(self._terms.items())

    def term_map(self) -> dict[tuple[int, int], "RAT"]:
        return dict(self._terms)

    def coefficient(self, i: int, j: int) -> "RAT":
        return self._terms.get((i, j), RAT0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self._terms)

    def constant_term(self) -> "RAT":
        return self._terms.get((0, 0), RAT0)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def min_total_degree(self) -> Optional[int]:
        """Least total degree of a term; None for the zero polynomial."""
        if not self._terms:
            return None
        return min(i + j for i, j in self._terms)

    def degree_in(self, var: str) -> int:
        if not self._terms:
            return -1
        k = 0 if var == "x" else 1
        return max(e[k] for e in self._terms)

    def vanishes_at_origin(self) -> bool:
        return (0, 0) not in self._terms

    def support(self) -> set[tuple[int, int]]:
        return set(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self):
        from .parsing import render_poly

        return f"BiPoly({render_poly(self)})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "BiPoly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, RAT0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _raw_poly(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return _raw_poly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "BiPoly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return _coerce_poly(other) - self

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return self._mul_poly(other, None)
        try:
            c = rat(other)
        except (TypeError, ValueError):
            return NotImplemented
        if not c:
            return BiPoly.zero()
        return _raw_poly({e: c * v for e, v in self._terms.items()})

    __rmul__ = __mul__

    def _mul_poly(self, other: "BiPoly", maxdeg: Optional[int]) -> "BiPoly":
        if not self._terms or not other._terms:
            return BiPoly.zero()
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[tuple[int, int], RAT] = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                i, j = i1 + i2, j1 + j2
                if maxdeg is not None and i + j > maxdeg:
                    continue
                e = (i, j)
                s = out.get(e, RAT0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return _raw_poly(out)

    def mul_truncated(self, other: "BiPoly", maxdeg: int) -> "BiPoly":
        """Product with all terms of total degree > maxdeg dropped."""
        return self._mul_poly(_coerce_poly(other), maxdeg)

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def pow_truncated(self, n: int, maxdeg: int) -> "BiPoly":
        result = BiPoly.constant(1)
        base = self.truncated(maxdeg)
        while n:
            if n & 1:
                result = result.mul_truncated(base, maxdeg)
            if n > 1:
                base = base.mul_truncated(base, maxdeg)
            n >>= 1
        return result

    # -- calculus and substitution ------------------------------------------

    def diff(self, var: str) -> "BiPoly":
        """Formal partial derivative with respect to 'x' or 'y'."""
        if var not in ("x", "y"):
            raise ValueError(f"unknown variable {var!r}")
        out: dict[tuple[int, int], RAT] = {}
        if var == "x":
            for (i, j), c in self._terms.items():
                if i:
                    out[(i - 1, j)] = c * i
        else:
            for (i, j), c in self._terms.items():
                if j:
                    out[(i, j - 1)] = c * j
        return _raw_poly(out)

    def truncated(self, maxdeg: int) -> "BiPoly":
        """Drop all terms of total degree > maxdeg."""
        return _raw_poly({e: c for e, c in self._terms.items() if e[0] + e[1] <= maxdeg})

    def homogeneous_part(self, d: int) -> "BiPoly":
        return _raw_poly({e: c for e, c in self._terms.items() if e[0] + e[1] == d})

    def weighted_min_degree(self, w1: int, w2: int) -> Optional[int]:
        if not self._terms:
            return None
        return min(i * w1 + j * w2 for i, j in self._terms)

    def weighted_part(self, w1: int, w2: int, d: int) -> "BiPoly":
        return _raw_poly({(i, j): c for (i, j), c in self._terms.items() if i * w1 + j * w2 == d})

    def subs_poly(self, px: "BiPoly", py: "BiPoly", maxdeg: Optional[int] = None) -> "BiPoly":
        """Polynomial substitution f(px, py), optionally truncated in total degree."""
        rows: dict[int, dict[int, RAT]] = {}
        for (i, j), c in self._terms.items():
            rows.setdefault(j, {})[i] = c
        result = BiPoly.zero()
        for j in sorted(rows, reverse=True):
            # Horner in x within the row.
            row = rows[j]
            row_val = BiPoly.zero()
            prev_i = None
            for i in sorted(row, reverse=True):
                if prev_i is not None:
                    step = prev_i - i
                    row_val = (
                        row_val * px.pow_truncated(step, maxdeg)
                        if maxdeg is not None
                        else row_val * px**step
                    )
                row_val = row_val + BiPoly.constant(row[i])
                prev_i = i
            if prev_i:
                row_val = (
                    row_val.mul_truncated(px.pow_truncated(prev_i, maxdeg), maxdeg)
                    if maxdeg is not None
                    else row_val * px**prev_i
                )
            term = (
                row_val.mul_truncated(py.pow_truncated(j, maxdeg), maxdeg)
                if maxdeg is not None
                else row_val * py**j
            )
            result = result + term
        return result

    def swap_variables(self) -> "BiPoly":
        return _raw_poly({(j, i): c for (i, j), c in self._terms.items()})

    def eval(self, xv, yv):
        """Exact evaluation at a rational point."""
        xv, yv = rat(xv), rat(yv)
        total = RAT0
        for (i, j), c in self._terms.items():
            total += c * xv**i * yv**j
        return total

    # -- structure ----------------------------------------------------------

    def x_axis_part(self) -> dict[int, "RAT"]:
        """Coefficients of f(x, 0) as a map exponent -> coefficient."""
        return {i: c for (i, j), c in self._terms.items() if j == 0}

    def divide_out_monomial(self, i0: int, j0: int) -> "BiPoly":
        """Exact division by x^i0 y^j0; raises if some term is not divisible."""
        out = {}
        for (i, j), c in self._terms.items():
            if i < i0 or j < j0:
                raise ValueError("monomial does not divide polynomial")
            out[(i - i0, j - j0)] = c
        return _raw_poly(out)

    def content_free(self) -> "BiPoly":
        """Scale to integer coefficients with content 1 and positive leading term.

        Leading term is taken in graded lexicographic order; the result is the
        canonical representative of the polynomial up to rational scaling.
        """
        if not self._terms:
            return self
        stripped = strip_content(self._terms)
        lead = max(stripped, key=grlex_key)
        if stripped[lead] < 0:
            return _raw_poly({e: -c for e, c in stripped.items()})
        if stripped is self._terms:
            return self
        return _raw_poly(dict(stripped))


def strip_content(terms: Mapping[tuple[int, int], "RAT"]):
    """Divide a term map by its rational content (gcd of numerators over lcm
    of denominators, valid for reduced fractions).

    Returns the input mapping unchanged when the content is already 1; signs
    are not normalized.
    """
    if not terms:
        return terms
    num_gcd = 0
    den_lcm = 1
    for c in terms.values():
        d = c.denominator
        if d != 1:
            den_lcm = den_lcm * d // int_gcd(den_lcm, d)
        num_gcd = int_gcd(num_gcd, c.numerator)
    if num_gcd == den_lcm:
        return terms
    scale = RAT(den_lcm, num_gcd)
    return {e: c * scale for e, c in terms.items()}


def _raw_poly(terms: dict[tuple[int, int], "RAT"]) -> BiPoly:
    p = BiPoly.__new__(BiPoly)
    p._terms = terms
    return p


def _coerce_poly(value) -> BiPoly:
    if isinstance(value, BiPoly):
        return value
    try:
        return BiPoly.constant(rat(value))
    except (TypeError, ValueError):
        return NotImplemented


class TruncSeries:
    """Univariate power series known exactly or up to a truncation precision.

    ``precision=None`` marks an exact polynomial known in full; otherwise all
    stored exponents are < precision and exponents >= precision are unknown.
    """

    __slots__ = ("_coeffs", "_prec")

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None, precision: Optional[int] = None):
        cleaned: dict[int, RAT] = {}
        if coeffs:
            for k, c in coeffs.items():
                k = int(k)
                if k < 0:
                    raise ValueError("negative series exponent")
                if precision is not None and k >= precision:
                    continue
                c = rat(c)
                if c:
                    cleaned[k] = c
        self._coeffs = cleaned
        self._prec = precision

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, precision: Optional[int] = None) -> "TruncSeries":
        return cls({}, precision)

    @classmethod
    def monomial(cls, k: int, c=1, precision: Optional[int] = None) -> "TruncSeries":
        return cls({k: c}, precision)

    @classmethod
    def t(cls) -> "TruncSeries":
        return cls({1: 1})

    @classmethod
    def from_coefficient_list(cls, coeffs: Iterable, precision: Optional[int] = None) -> "TruncSeries":
        return cls({k: c for k, c in enumerate(coeffs)}, precision)

    # -- inspection ---------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self._prec is None

    @property
    def precision(self) -> Optional[int]:
        return self._prec

    def coefficients(self) -> dict[int, "RAT"]:
        return dict(self._coeffs)

    def exponents(self) -> list[int]:
        return sorted(self._coeffs)

    def coefficient(self, k: int) -> "RAT":
        """Coefficient of t^k; raises PrecisionExhausted when it is unknown."""
        if self._prec is not None and k >= self._prec:
            raise PrecisionExhausted(f"coefficient of t^{k} beyond precision {self._prec}")
        return self._coeffs.get(k, RAT0)

    @property
    def is_exactly_zero(self) -> bool:
        return self.exact and not self._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self._coeffs == other._coeffs and self._prec == other._prec

    def __hash__(self):
        return hash((frozenset(self._coeffs.items()), self._prec))

    def __repr__(self):
        from .parsing import render_series

        return f"TruncSeries({render_series(self)})"

    def order(self) -> Union[int, _IdenticallyZero]:
        """Least exponent with a nonzero coefficient.

        Returns IDENTICALLY_ZERO for the exact zero series and raises
        PrecisionExhausted when everything stored vanishes but higher terms
        are unknown.
        """
        if self._coeffs:
            return min(self._coeffs)
        if self.exact:
            return IDENTICALLY_ZERO
        raise PrecisionExhausted(
            f"series vanishes to precision {self._prec} but is not known exactly"
        )

    # -- arithmetic ----------------------------------------------------------

    def _join_precision(self, other: "TruncSeries") -> Optional[int]:
        if self._prec is None:
            return other._prec
        if other._prec is None:
            return self._prec
        return min(self._prec, other._prec)

    def __add__(self, other) -> "TruncSeries":
        other = _coerce_series(other)
        if other is NotImplemented:
            return NotImplemented
        prec = self._join_precision(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            s = out.get(k, RAT0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        if prec is not None:
            out = {k: c for k, c in out.items() if k < prec}
        return _raw_series(out, prec)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return _raw_series({k: -c for k, c in self._coeffs.items()}, self._prec)

    def __sub__(self, other) -> "TruncSeries":
        other = _coerce_series(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "TruncSeries":
        return _coerce_series(other) - self

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            prec = self._join_precision(other)
            out: dict[int, RAT] = {}
            for k1, c1 in self._coeffs.items():
                for k2, c2 in other._coeffs.items():
                    k = k1 + k2
                    if prec is not None and k >= prec:
                        continue
                    s = out.get(k, RAT0) + c1 * c2
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
            return _raw_series(out, prec)
        try:
            c = rat(other)
        except (TypeError, ValueError):
            return NotImplemented
        if not c:
            return _raw_series({}, self._prec)
        return _raw_series({k: c * v for k, v in self._coeffs.items()}, self._prec)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            raise ValueError("negative series power")
        result = TruncSeries({0: 1}, self._prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            if n > 1:
                base = base * base
            n >>= 1
        return result

    def diff(self) -> "TruncSeries":
        """Formal derivative; an inexact precision drops by one."""
        out = {k - 1: c * k for k, c in self._coeffs.items() if k}
        prec = None if self._prec is None else max(self._prec - 1, 0)
        return _raw_series(out, prec)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by t^k (k may be negative when every exponent allows it)."""
        if k < 0 and any(e + k < 0 for e in self._coeffs):
            raise ValueError("shift would create negative exponents")
        prec = None if self._prec is None else self._prec + k
        return _raw_series({e + k: c for e, c in self._coeffs.items()}, prec)

    def truncate(self, precision: int) -> "TruncSeries":
        """Forget coefficients at exponents >= precision."""
        if self._prec is not None and self._prec <= precision:
            return self
        return _raw_series({k: c for k, c in self._coeffs.items() if k < precision}, precision)


def _raw_series(coeffs: dict[int, "RAT"], prec: Optional[int]) -> TruncSeries:
    s = TruncSeries.__new__(TruncSeries)
    s._coeffs = coeffs
    s._prec = prec
    return s


def _coerce_series(value) -> TruncSeries:
    if isinstance(value, TruncSeries):
        return value
    try:
        return TruncSeries({0: rat(value)})
    except (TypeError, ValueError):
        return NotImplemented


def compose(f: BiPoly, xs: TruncSeries, ys: TruncSeries) -> TruncSeries:
    """Series of f(x(t), y(t)) for series vanishing at t=0.

    The result is exact when f is a polynomial and both components are exact;
    otherwise it carries the joint precision of the inputs.
    """
    for s in (xs, ys):
        if s._coeffs.get(0):
            raise ValueError("parametrization components must vanish at t=0")
    prec = xs._join_precision(ys)
    rows: dict[int, dict[int, RAT]] = {}
    for (i, j), c in f.terms():
        rows.setdefault(j, {})[i] = c
    result = TruncSeries.zero(prec)
    one = TruncSeries({0: 1}, prec)
    for j in sorted(rows, reverse=True):
        row = rows[j]
        row_val = TruncSeries.zero(prec)
        prev_i = None
        for i in sorted(row, reverse=True):
            if prev_i is not None:
                row_val = row_val * xs ** (prev_i - i)
            row_val = row_val + one * row[i]
            prev_i = i
        if prev_i:
            row_val = row_val * xs**prev_i
        result = result + row_val * ys**j
    return result


def with_precision_retry(
    computation: Callable[[int], T],
    start: Optional[int] = None,
    cap: Optional[int] = None,
) -> T:
    """Run a precision-parametrized computation, doubling on PrecisionExhausted.

    Precision starts at DEFAULT_PRECISION (or ``start``) and doubles up to
    PRECISION_CAP (or ``cap``), after which the error propagates.
    """
    precision = start or DEFAULT_PRECISION
    ceiling = cap or PRECISION_CAP
    while True:
        try:
            return computation(precision)
        except PrecisionExhausted:
            if precision >= ceiling:
                raise
            precision = min(precision * 2, ceiling)
