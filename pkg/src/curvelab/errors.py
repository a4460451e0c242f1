"""Exception types shared across the package.

Every error a caller is expected to catch and act on has its own class;
messages carry the offending object rendered in the input syntax where that
helps diagnosis.  ``Infinite`` results are values, never exceptions.
"""

from __future__ import annotations


class CurveLabError(Exception):
    """Base class for all package errors."""


class ParseError(CurveLabError):
    """Input text does not conform to the expression grammar."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f"{message} at line {line}, column {column}"
        if expected:
            detail += " (expected " + " or ".join(expected) + ")"
        super().__init__(detail)


class ConstantComponent(CurveLabError):
    """A parametrization component is constant or does not vanish at t=0."""


class PrecisionExhausted(CurveLabError):
    """All stored coefficients vanish below the tracked precision.

    The caller should recompute the offending series at higher precision;
    :func:`curvelab.algebra.with_precision_retry` automates the doubling.
    """


class NotThroughOrigin(CurveLabError):
    """The curve does not pass through the origin."""


class NotYGeneral(CurveLabError):
    """f(0, y) vanishes identically, so the y-direction is not general."""


class NotNormalForm(CurveLabError):
    """Parametrization is not in the required (t^m, y(t)) normal form."""


class Smooth(CurveLabError):
    """Operation requires a singular germ but received a smooth one."""


class NotAParametrization(CurveLabError):
    """The series pair does not satisfy f(x(t), y(t)) = 0."""


class NotAVertex(CurveLabError):
    """The queried parameter value is not a vertex of the curve."""


class DegenerateVertex(CurveLabError):
    """Vertex with vanishing second derivative of curvature; no orientation."""


class ZeroOnCircle(CurveLabError):
    """The map pair has a certified zero on the sample circle."""


class NonConvergent(CurveLabError):
    """Adaptive subdivision hit its cap without certifying the circle."""


class ExtensionRequired(CurveLabError):
    """Newton-Puiseux expansion leaves the rational numbers.

    ``characteristic`` holds a rendering of the irreducible polynomial whose
    roots would have to be adjoined.
    """

    def __init__(self, characteristic: str):
        self.characteristic = characteristic
        super().__init__(f"branch expansion requires roots of {characteristic}")


class NonIsolated(CurveLabError):
    """The germ has a repeated factor through the origin."""


class NotIrreducible(CurveLabError):
    """Operation requires an irreducible germ."""


class OddMilnor(CurveLabError):
    """Milnor number is odd where an even value is a hypothesis."""


class SharedComponent(CurveLabError):
    """Two factors share a component through the origin."""


class HypothesisViolated(CurveLabError):
    """A closed-form formula's hypothesis fails; the message names it."""


class InvalidBranch(CurveLabError):
    """Branch data (m, beta) is not admissible."""


class DegenerateCase(CurveLabError):
    """Formula does not determine the value in this degenerate configuration."""


class ConsistencyError(CurveLabError):
    """Two independent computations of the same quantity disagree.

    Raised by operations that double as self-tests; it always indicates a bug
    or a violated hypothesis, never bad user input.
    """
