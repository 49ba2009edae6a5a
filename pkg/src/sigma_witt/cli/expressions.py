"""Text form of ring elements: a recursive-descent parser and the canonical formatter.

Grammar::

    element := ['-'] term (('+' | '-') term)*
    term    := power (('*' | '/') power)*
    power   := atom ['^' ['-'] int]
    atom    := ['-'] int | name | 'zeta' '(' int ')' | '(' element ')'

Names resolve to ring variables first, then to field parameters. ``/`` is exact division
and a negative power is only allowed on a unit.
"""
import re
from dataclasses import dataclass
from typing import Dict, List

from ..algebra.coeff import Coefficient
from ..algebra.endo import Endomorphism
from ..algebra.ring import RingDescriptor, RingElement, exact_divide, is_unit, unit_inverse
from ..core.errors import (
    DivisionByZero,
    ExponentDomainError,
    ExpressionError,
    ExpressionSyntaxError,
    NotDivisible,
    UnknownSymbol,
)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_OPERATORS = set("+-*/^()")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op" or "end"
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while True:
        match = _TOKEN.match(text, pos)
        if match is None:
            break
        number, name, op = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            tokens.append(Token("num", number, start))
        elif name is not None:
            tokens.append(Token("name", name, start))
        elif op in _OPERATORS:
            tokens.append(Token("op", op, start))
        else:
            raise ExpressionSyntaxError(start, "a number, a name, an operator or a parenthesis", found=op)
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingDescriptor):
        self.text = text
        self.ring = ring
        self.field = ring.coefficients
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.text == op:
            self.index += 1
            return True
        return False

    def _expect(self, op: str) -> None:
        if not self._accept(op):
            raise ExpressionSyntaxError(self.current.position, f"'{op}'", found=self.current.text)

    def parse(self) -> RingElement:
        if self.current.kind == "end":
            raise ExpressionSyntaxError(0, "an expression")
        value = self.element()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(self.current.position, "end of input", found=self.current.text)
        return value

    def element(self) -> RingElement:
        negative = self._accept("-")
        value = self.term()
        if negative:
            value = -value
        while True:
            if self._accept("+"):
                value = value + self.term()
            elif self._accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> RingElement:
        value = self.power()
        while True:
            if self._accept("*"):
                value = value * self.power()
            elif self.current.kind == "op" and self.current.text == "/":
                position = self.current.position
                self.index += 1
                value = self._divide(value, self.power(), position)
            else:
                return value

    def _divide(self, a: RingElement, b: RingElement, position: int) -> RingElement:
        try:
            return exact_divide(a, b)
        except DivisionByZero as err:
            raise ExpressionError("division by zero", position=position) from err
        except NotDivisible as err:
            raise ExpressionError("division does not stay inside the ring", position=position) from err

    def power(self) -> RingElement:
        base_position = self.current.position
        base = self.atom()
        if not self._accept("^"):
            return base
        negative = self._accept("-")
        if self.current.kind != "num":
            raise ExpressionSyntaxError(self.current.position, "an integer exponent", found=self.current.text)
        exponent = int(self.current.text)
        self.index += 1
        if not negative:
            return base ** exponent
        if not is_unit(base):
            raise ExponentDomainError("negative exponent on an element that is not a unit",
                                      position=base_position)
        return unit_inverse(base) ** exponent

    def atom(self) -> RingElement:
        token = self.current
        if token.kind == "op" and token.text == "-" and self.tokens[self.index + 1].kind == "num":
            self.index += 2
            return self.ring.constant(-int(self.tokens[self.index - 1].text))
        if token.kind == "num":
            self.index += 1
            return self.ring.constant(int(token.text))
        if token.kind == "name":
            self.index += 1
            if token.text == "zeta":
                return self._zeta(token)
            if token.text in self.ring.variables:
                return self.ring.variable(token.text)
            value = self.field.parameter(token.text)
            if value is None:
                raise UnknownSymbol(f"unknown symbol '{token.text}'", position=token.position, symbol=token.text)
            return self.ring.constant(value)
        if self._accept("("):
            value = self.element()
            self._expect(")")
            return value
        raise ExpressionSyntaxError(token.position, "a number, a name or '('", found=token.text)

    def _zeta(self, token: Token) -> RingElement:
        self._expect("(")
        if self.current.kind != "num":
            raise ExpressionSyntaxError(self.current.position, "a positive integer", found=self.current.text)
        order = int(self.current.text)
        self.index += 1
        self._expect(")")
        value = self.field.zeta(order) if order > 0 else None
        if value is None:
            raise UnknownSymbol(f"zeta({order}) is not an element of {self.field.descriptor}",
                                position=token.position, symbol=f"zeta({order})")
        return self.ring.constant(value)


def parse_element(text: str, ring: RingDescriptor) -> RingElement:
    """Parse ``text`` into a canonical element of ``ring``."""
    element = _Parser(text, ring).parse()
    for e in element.terms:
        if not ring.allowed(e):
            raise ExponentDomainError("negative exponent on a polynomial variable", position=0)
    return element


def parse_constant(text: str, ring: RingDescriptor) -> Coefficient:
    element = parse_element(text, ring)
    if not element.is_constant:
        raise ExpressionError(f"'{text}' is not a constant", position=0)
    return element.constant_coefficient()


def parse_endomorphism(text: str, ring: RingDescriptor) -> Endomorphism:
    """Parse ``"x -> c*monomial; y -> ..."``; unlisted variables are fixed."""
    images: Dict[str, RingElement] = {}
    offset = 0
    for entry in text.split(";"):
        if entry.strip():
            if "->" not in entry:
                raise ExpressionSyntaxError(offset, "'variable -> image'", found=entry.strip())
            name, image = entry.split("->", 1)
            name = name.strip()
            if name not in ring.variables:
                raise UnknownSymbol(f"'{name}' is not a ring variable", position=offset, symbol=name)
            if name in images:
                raise ExpressionError(f"'{name}' has two images", position=offset)
            images[name] = parse_element(image, ring)
        offset += len(entry) + 1
    return Endomorphism.from_images(ring, [images.get(v, ring.variable(v)) for v in ring.variables])


# --- formatting ---

def format_monomial(exponents, names) -> str:
    return "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exponents) if e)


def format_coefficient(ring: RingDescriptor, c: Coefficient) -> str:
    field = ring.coefficients
    if not c:
        return "0"
    negative, magnitude = field.split_sign(c)
    text, kind = field.format(magnitude)
    if negative and kind == "sum":
        text = f"({text})"
    return f"-{text}" if negative else text


def format_element(a: RingElement) -> str:
    if not a:
        return "0"
    field = a.ring.coefficients
    names = a.ring.variables
    several = len(a.terms) > 1
    pieces = []
    for i, (e, c) in enumerate(a.terms.items()):
        negative, magnitude = field.split_sign(c)
        text, kind = field.format(magnitude)
        mono = format_monomial(e, names)
        if not mono:
            body = f"({text})" if kind == "sum" and (several or negative) else text
        elif kind == "one":
            body = mono
        elif kind == "sum":
            body = f"({text})*{mono}"
        else:
            body = f"{text}*{mono}"
        if i == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
