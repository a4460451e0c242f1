"""Expression grammar for polynomials and parametrizations, plus rendering.

Grammar (whitespace-insensitive)::

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*'? factor)*
    factor   := base ('^' nat)?
    base     := rational | 'x' | 'y' | 't' | '(' expr ')'
    rational := nat ('/' nat)?

Juxtaposition multiplies ("2xy^3"), and a single leading minus is accepted so
rendered output reparses.  Parametrizations are two comma-separated
expressions in t alone.

Rendering is canonical: terms in graded lexicographic order with x before y,
highest first, explicit '*' between factors, so parse(render(p)) == p.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Optional

from .algebra import BiPoly, RAT, TruncSeries, rat
from .errors import ConstantComponent, ParseError
from .parametric import Param


class _Token(NamedTuple):
    kind: str  # NUMBER, NAME, OP, END
    text: str
    line: int
    column: int


_OPS = set("+-*/^(),")


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(_Token("NUMBER", text[start:i], line, col))
            col += i - start
            continue
        if ch.isalpha():
            start = i
            while i < len(text) and text[i].isalpha():
                i += 1
            tokens.append(_Token("NAME", text[start:i], line, col))
            col += i - start
            continue
        if ch in _OPS:
            tokens.append(_Token("OP", ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("END", "", line, col))
    return tokens


class _Parser:
    """Recursive-descent evaluator over a caller-supplied variable environment."""

    def __init__(self, text: str, variables: dict[str, object], constant):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = variables
        self.constant = constant

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: tuple[str, ...]):
        tok = self.peek()
        shown = tok.text or "end of input"
        raise ParseError(f"unexpected {shown!r}", tok.line, tok.column, expected)

    def parse(self):
        value = self.expr()
        if self.peek().kind != "END":
            self.fail(("operator", "end of input"))
        return value

    def expr(self):
        negate = False
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.advance()
            negate = True
        value = self.term()
        if negate:
            value = -value
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if tok.text == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text == "*":
                self.advance()
                value = value * self.factor()
            elif tok.kind in ("NUMBER", "NAME") or (tok.kind == "OP" and tok.text == "("):
                value = value * self.factor()
            else:
                return value

    def factor(self):
        value = self.base()
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "^":
            self.advance()
            exp = self.peek()
            if exp.kind != "NUMBER":
                self.fail(("natural number exponent",))
            self.advance()
            value = value ** int(exp.text)
        return value

    def base(self):
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.advance()
            nxt = self.peek()
            if nxt.kind == "OP" and nxt.text == "/":
                self.advance()
                denom = self.peek()
                if denom.kind != "NUMBER" or int(denom.text) == 0:
                    self.fail(("positive integer denominator",))
                self.advance()
                return self.constant(RAT(int(tok.text), int(denom.text)))
            return self.constant(rat(int(tok.text)))
        if tok.kind == "NAME":
            if tok.text not in self.variables:
                allowed = ", ".join(sorted(self.variables)) or "none"
                raise ParseError(
                    f"variable {tok.text!r} not allowed here (allowed: {allowed})",
                    tok.line,
                    tok.column,
                )
            self.advance()
            return self.variables[tok.text]
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            value = self.expr()
            closing = self.peek()
            if closing.kind != "OP" or closing.text != ")":
                self.fail((")",))
            self.advance()
            return value
        self.fail(("number", "variable", "("))


def parse_poly(text: str) -> BiPoly:
    """Parse an expression in x and y into an exact bivariate polynomial."""
    parser = _Parser(
        text,
        {"x": BiPoly.x(), "y": BiPoly.y()},
        lambda c: BiPoly.constant(c),
    )
    return parser.parse()


def _parse_t_component(text: str) -> TruncSeries:
    parser = _Parser(
        text,
        {"t": TruncSeries.t()},
        lambda c: TruncSeries({0: c}),
    )
    return parser.parse()


def _split_top_level_comma(text: str) -> list[str]:
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(depth - 1, 0)
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def parse_param(text: str) -> Param:
    """Parse "x(t), y(t)" into a parametrization with exact components."""
    parts = _split_top_level_comma(text)
    if len(parts) != 2:
        raise ParseError(
            "a parametrization is two comma-separated components", 1, 1, ("','",)
        )
    xs = _parse_t_component(parts[0])
    ys = _parse_t_component(parts[1])
    for label, s in (("x", xs), ("y", ys)):
        if s.coefficients().get(0):
            raise ConstantComponent(f"{label}(t) must vanish at t=0")
    if xs.is_exactly_zero and ys.is_exactly_zero:
        raise ConstantComponent("components must not both be zero")
    return Param(xs, ys)


# -- rendering -----------------------------------------------------------------


def _render_coeff(c: "RAT") -> str:
    return str(c)


def _render_monomial(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def render_poly(p: BiPoly) -> str:
    """Canonical text form: graded lexicographic, highest terms first."""
    from .algebra import grlex_key

    if p.is_zero:
        return "0"
    pieces = []
    for e in sorted(p.term_map(), key=grlex_key, reverse=True):
        c = p.coefficient(*e)
        mono = _render_monomial(*e)
        negative = c < 0
        mag = -c if negative else c
        if mono:
            body = mono if mag == 1 else f"{_render_coeff(mag)}*{mono}"
        else:
            body = _render_coeff(mag)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def render_series(s: TruncSeries) -> str:
    """Ascending rendering of a series, with an O(t^p) tail when inexact."""
    pieces = []
    for k in s.exponents():
        c = s.coefficient(k)
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        negative = c < 0
        mag = -c if negative else c
        body = mono if (mag == 1 and mono) else (f"{_render_coeff(mag)}*{mono}" if mono else _render_coeff(mag))
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    if not pieces:
        pieces.append("0")
    if not s.exact:
        pieces.append(f"+ O(t^{s.precision})")
    return " ".join(pieces)


def render_param(p: Param) -> str:
    return f"{render_series(p.x)}, {render_series(p.y)}"
