"""Dense-enough univariate polynomials over the rationals.

Internal helper used for three jobs: coefficient arithmetic of bivariate
polynomials viewed in one variable (gcd computations), rational root finding
for Newton-Puiseux characteristic polynomials, and exact evaluation of
parametrization data at rational arguments.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Optional

from .algebra import RAT, RAT0, RAT1, rat


class UniPoly:
    """Sparse univariate polynomial with exact rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None):
        cleaned: dict[int, RAT] = {}
        if coeffs:
            for k, c in coeffs.items():
                c = rat(c)
                if c:
                    cleaned[int(k)] = c
        self._c = cleaned

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls({k: c})

    @classmethod
    def from_list(cls, coeffs: Iterable) -> "UniPoly":
        return cls({k: c for k, c in enumerate(coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def is_constant(self) -> bool:
        return all(k == 0 for k in self._c)

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self._c) if self._c else -1

    def order(self) -> Optional[int]:
        return min(self._c) if self._c else None

    def coefficient(self, k: int) -> "RAT":
        return self._c.get(k, RAT0)

    def leading_coefficient(self) -> "RAT":
        return self._c[max(self._c)] if self._c else RAT0

    def coefficients(self) -> dict[int, "RAT"]:
        return dict(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        if not self._c:
            return "UniPoly(0)"
        bits = [f"{c}*s^{k}" for k, c in sorted(self._c.items(), reverse=True)]
        return "UniPoly(" + " + ".join(bits) + ")"

    def __add__(self, other) -> "UniPoly":
        other = _coerce(other)
        out = dict(self._c)
        for k, c in other._c.items():
            s = out.get(k, RAT0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return _raw({k: -c for k, c in self._c.items()})

    def __sub__(self, other) -> "UniPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            out: dict[int, RAT] = {}
            for k1, c1 in self._c.items():
                for k2, c2 in other._c.items():
                    k = k1 + k2
                    s = out.get(k, RAT0) + c1 * c2
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
            return _raw(out)
        c = rat(other)
        if not c:
            return UniPoly.zero()
        return _raw({k: c * v for k, v in self._c.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            if n > 1:
                base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Field division with remainder."""
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        q: dict[int, RAT] = {}
        r = self
        d = other.degree()
        lc = other.leading_coefficient()
        while not r.is_zero and r.degree() >= d:
            k = r.degree() - d
            c = r.leading_coefficient() / lc
            q[k] = c
            r = r - other * UniPoly.monomial(k, c)
        return _raw(q), r

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("inexact univariate division")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        lc = self.leading_coefficient()
        return self * (RAT1 / lc)

    def derivative(self) -> "UniPoly":
        return _raw({k - 1: c * k for k, c in self._c.items() if k})

    def eval(self, value) -> "RAT":
        """Exact Horner evaluation at a rational point."""
        v = rat(value)
        result = RAT0
        prev = None
        for k in sorted(self._c, reverse=True):
            if prev is not None:
                result *= v ** (prev - k)
            result += self._c[k]
            prev = k
        if prev:
            result *= v**prev
        return result

    def shift_down(self, k: int) -> "UniPoly":
        """Exact division by s^k."""
        if any(e < k for e in self._c):
            raise ValueError("monomial does not divide polynomial")
        return _raw({e - k: c for e, c in self._c.items()})

    def primitive_integer(self) -> "UniPoly":
        """Integer-coefficient associate with content 1 and positive leading term."""
        if self.is_zero:
            return self
        denoms = 1
        for c in self._c.values():
            denoms = denoms * c.denominator // math.gcd(denoms, c.denominator)
        nums = 0
        for c in self._c.values():
            nums = math.gcd(nums, abs(int(c.numerator * (denoms // c.denominator))))
        scale = RAT(denoms, nums)
        if self.leading_coefficient() < 0:
            scale = -scale
        return self * scale

    def rational_roots(self) -> list[tuple["RAT", int]]:
        """All rational roots with multiplicities, by the rational root test."""
        if self.is_zero:
            raise ValueError("zero polynomial has every root")
        roots: list[tuple[RAT, int]] = []
        p = self
        low = p.order()
        if low:
            roots.append((RAT0, low))
            p = p.shift_down(low)
        p = p.primitive_integer()
        if p.is_constant:
            return roots
        a0 = abs(int(p.coefficient(0).numerator))
        an = abs(int(p.leading_coefficient().numerator))
        for num in _divisors(a0):
            for den in _divisors(an):
                if math.gcd(num, den) != 1:
                    continue
                for cand in (RAT(num, den), RAT(-num, den)):
                    if p.eval(cand):
                        continue
                    mult = 0
                    while not p.eval(cand):
                        p = p.exact_div(UniPoly({1: 1, 0: -cand}))
                        mult += 1
                        if p.is_constant:
                            break
                    roots.append((cand, mult))
                    if p.is_constant:
                        return roots
        return roots


def _raw(coeffs: dict[int, "RAT"]) -> UniPoly:
    p = UniPoly.__new__(UniPoly)
    p._c = coeffs
    return p


def _coerce(value) -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    return UniPoly.constant(rat(value))


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _pseudo_rem(a: UniPoly, b: UniPoly) -> UniPoly:
    """Pseudo-remainder keeping integer coefficients integer."""
    db = b.degree()
    lc = b.leading_coefficient()
    r = a
    while not r.is_zero and r.degree() >= db:
        k = r.degree() - db
        r = r * lc - b * UniPoly.monomial(k, r.leading_coefficient())
    return r


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor over the rationals.

    Computed by a primitive pseudo-remainder sequence on integer associates;
    plain monic Euclid suffers exponential coefficient growth on the dense
    inputs this package produces.
    """
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    a = a.primitive_integer()
    b = b.primitive_integer()
    if a.degree() < b.degree():
        a, b = b, a
    while not b.is_zero and b.degree() > 0:
        r = _pseudo_rem(a, b)
        a, b = b, (r.primitive_integer() if not r.is_zero else UniPoly.zero())
    if not b.is_zero:
        return UniPoly.constant(1)
    return a.monic()


def uni_gcd_many(polys: Iterable[UniPoly]) -> UniPoly:
    acc = UniPoly.zero()
    for p in polys:
        acc = uni_gcd(acc, p)
        if acc.is_constant and not acc.is_zero:
            return acc
    return acc


def rational_nth_root(value: "RAT", n: int) -> Optional["RAT"]:
    """The rational r with r^n == value, if one exists.

    For even n the nonnegative root is returned; negative values with even n
    have none.
    """
    v = rat(value)
    if n <= 0:
        raise ValueError("root index must be positive")
    if not v:
        return RAT0
    negative = v < 0
    if negative and n % 2 == 0:
        return None
    av = -v if negative else v
    num = _integer_nth_root(int(av.numerator), n)
    den = _integer_nth_root(int(av.denominator), n)
    if num is None or den is None:
        return None
    root = RAT(num, den)
    return -root if negative else root


def _integer_nth_root(m: int, n: int) -> Optional[int]:
    if m == 0:
        return 0
    r = round(m ** (1.0 / n))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**n == m:
            return cand
    # Float guess can be off for very large inputs; fall back to bisection.
    lo, hi = 0, 1 << ((m.bit_length() + n - 1) // n + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid**n
        if p == m:
            return mid
        if p < m:
            lo = mid + 1
        else:
            hi = mid - 1
    return None
