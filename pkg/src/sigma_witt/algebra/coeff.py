"""Exact ground fields: QQ, QQ(q1, ..., qm) and cyclotomic fields QQ[z]/Phi_n(z).

Coefficients are plain values of the underlying exact type, so ring code can use Python
operators on them directly:

* rationals           -> sympy ``QQ`` elements (``PythonMPQ`` or gmpy2 ``mpq``)
* rational functions  -> sympy ``FracElement`` (always cancelled, denominator normalised)
* cyclotomic          -> :class:`CyclotomicNumber` (eagerly reduced modulo Phi_n)

Every field is described by a hashable :class:`FieldDescriptor` and realised by a cached
:class:`CoefficientField` from :func:`get_field`.
"""
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ, ZZ
from sympy.ntheory import divisors
from sympy.polys.densearith import dup_add, dup_mul, dup_neg, dup_quo, dup_rem, dup_sub
from sympy.polys.densebasic import dup_strip
from sympy.polys.euclidtools import dup_invert
from sympy.polys.fields import FracElement, xfield

from ..core.errors import DivisionByZero, MixedFields, ZeroInput

Coefficient = Any

IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")
RESERVED_NAMES = frozenset({"zeta", "symbolic"})


class FieldKind(str, Enum):
    RATIONALS = "rationals"
    RATIONAL_FUNCTIONS = "rational_functions"
    CYCLOTOMIC = "cyclotomic"


@dataclass(frozen=True)
class FieldDescriptor:
    kind: FieldKind
    parameters: Tuple[str, ...] = ()
    order: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "parameters", tuple(self.parameters))
        if self.kind is FieldKind.RATIONALS:
            if self.parameters or self.order is not None:
                raise ValueError("QQ takes no parameters")
        elif self.kind is FieldKind.RATIONAL_FUNCTIONS:
            if not self.parameters:
                raise ValueError("a rational function field needs at least one parameter")
            if len(set(self.parameters)) != len(self.parameters):
                raise ValueError(f"duplicate parameter names: {self.parameters}")
            for name in self.parameters:
                if not IDENTIFIER.match(name) or name in RESERVED_NAMES:
                    raise ValueError(f"invalid parameter name: {name!r}")
        elif self.kind is FieldKind.CYCLOTOMIC:
            if not isinstance(self.order, int) or self.order < 1 or self.parameters:
                raise ValueError("a cyclotomic field needs an order n >= 1 and no parameters")

    @classmethod
    def rationals(cls) -> "FieldDescriptor":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def rational_functions(cls, *names: str) -> "FieldDescriptor":
        return cls(FieldKind.RATIONAL_FUNCTIONS, tuple(names))

    @classmethod
    def cyclotomic(cls, n: int) -> "FieldDescriptor":
        return cls(FieldKind.CYCLOTOMIC, order=n)

    def __str__(self) -> str:
        if self.kind is FieldKind.RATIONALS:
            return "QQ"
        if self.kind is FieldKind.RATIONAL_FUNCTIONS:
            return f"QQ({','.join(self.parameters)})"
        return f"QQ(zeta({self.order}))"


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Phi_n as integer coefficients, highest degree first.

    Computed as (x^n - 1) divided by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1")
    f = [ZZ(1)] + [ZZ(0)] * (n - 1) + [ZZ(-1)]
    for d in divisors(n)[:-1]:
        f = dup_quo(f, [ZZ(c) for c in cyclotomic_polynomial(d)], ZZ)
    return tuple(int(c) for c in f)


def format_rational(value) -> str:
    num, den = int(value.numerator), int(value.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_sparse(terms: Iterable[Tuple[Tuple[int, ...], Any]], names: Sequence[str]) -> Tuple[str, int]:
    """Render rational-coefficient terms in ascending graded-lex order.

    Returns the text and the number of terms.
    """
    ordered = sorted(((m, c) for m, c in terms if c), key=lambda mc: (sum(mc[0]), mc[0]))
    if not ordered:
        return "0", 0
    pieces = []
    for i, (monom, coeff) in enumerate(ordered):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        mono = "*".join(name if e == 1 else f"{name}^{e}" for name, e in zip(names, monom) if e)
        if not mono:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{format_rational(magnitude)}*{mono}"
        if i == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces), len(ordered)


class CoefficientField(ABC):
    """Arithmetic, formatting and root-of-unity detection for one ground field."""

    def __init__(self, descriptor: FieldDescriptor):
        self.descriptor = descriptor

    zero: Coefficient
    one: Coefficient

    # sympy dup_* routines accept any object with this domain interface; fields without a
    # native sympy domain serve as their own
    is_Field = True
    is_Exact = True

    @property
    def domain(self):
        return self

    def exquo(self, a, b):
        return self.div(a, b)

    @abstractmethod
    def convert(self, value) -> Coefficient:
        """Bring an int, Fraction, QQ element or own element into the field."""

    @abstractmethod
    def owns(self, value) -> bool:
        """True if ``value`` is an element of this field (ints count as elements)."""

    @abstractmethod
    def split_sign(self, c: Coefficient) -> Tuple[bool, Coefficient]:
        """Return (negative, magnitude) so that formatting can pull out a leading minus."""

    @abstractmethod
    def format(self, c: Coefficient) -> Tuple[str, str]:
        """Return (text, kind); kind is 'one', 'sum' or 'factor'."""

    @abstractmethod
    def as_rational(self, c: Coefficient):
        """The QQ value of ``c`` if it is a rational constant, else None."""

    def parameter(self, name: str) -> Optional[Coefficient]:
        return None

    def zeta(self, m: int) -> Optional[Coefficient]:
        return None

    # --- arithmetic ---

    def _check(self, *values) -> None:
        for v in values:
            if not self.owns(v):
                raise MixedFields(f"value is not an element of {self.descriptor}", value=repr(v))

    def add(self, a, b):
        self._check(a, b)
        return self.convert(a) + self.convert(b)

    def sub(self, a, b):
        self._check(a, b)
        return self.convert(a) - self.convert(b)

    def mul(self, a, b):
        self._check(a, b)
        return self.convert(a) * self.convert(b)

    def div(self, a, b):
        self._check(a, b)
        if not b:
            raise DivisionByZero("division by zero in coefficient field", field=self.descriptor)
        return self.convert(a) / self.convert(b)

    def inverse(self, c):
        if not c:
            raise DivisionByZero("zero has no inverse", field=self.descriptor)
        return self.one / self.convert(c)

    def pow(self, c, k: int):
        c = self.convert(c)
        if k >= 0:
            return c ** k
        return self.inverse(c ** (-k))

    def is_one(self, c) -> bool:
        return c == self.one

    def root_of_unity_order(self, c) -> Optional[int]:
        if not c:
            raise ZeroInput("root_of_unity_order of zero", field=self.descriptor)
        c = self.convert(c)
        if c == self.one:
            return 1
        # x^2 = 1 only for x = +-1 in a field
        if c * c == self.one:
            return 2
        return None


class RationalField(CoefficientField):
    def __init__(self, descriptor: FieldDescriptor):
        super().__init__(descriptor)
        self.zero = QQ(0)
        self.one = QQ(1)

    @property
    def domain(self):
        return QQ

    def convert(self, value):
        if QQ.of_type(value):
            return value
        if isinstance(value, Fraction):
            return QQ(value.numerator, value.denominator)
        if isinstance(value, int):
            return QQ(value)
        raise MixedFields("cannot convert into QQ", value=repr(value))

    def owns(self, value) -> bool:
        return isinstance(value, (int, Fraction)) or QQ.of_type(value)

    def split_sign(self, c):
        return (c < 0, -c if c < 0 else c)

    def format(self, c):
        if c == 1:
            return "1", "one"
        return format_rational(c), "factor"

    def as_rational(self, c):
        return self.convert(c)


class RationalFunctionField(CoefficientField):
    def __init__(self, descriptor: FieldDescriptor):
        super().__init__(descriptor)
        self._K, self._gens = xfield(list(descriptor.parameters), QQ)
        self.zero = self._K.zero
        self.one = self._K.one
        self._domain = self._K.to_domain()

    @property
    def domain(self):
        return self._domain

    def convert(self, value):
        if isinstance(value, FracElement):
            if value.field != self._K:
                raise MixedFields("rational function from another field", value=repr(value))
            return value
        if isinstance(value, Fraction):
            value = QQ(value.numerator, value.denominator)
        if isinstance(value, int) or QQ.of_type(value):
            return self._K(QQ.convert(value))
        raise MixedFields(f"cannot convert into {self.descriptor}", value=repr(value))

    def owns(self, value) -> bool:
        if isinstance(value, FracElement):
            return value.field == self._K
        return isinstance(value, (int, Fraction)) or QQ.of_type(value)

    def parameter(self, name: str):
        try:
            return self._gens[self.descriptor.parameters.index(name)]
        except ValueError:
            return None

    def _sorted_terms(self, poly) -> List[Tuple[Tuple[int, ...], Any]]:
        return sorted(poly.terms(), key=lambda mc: (sum(mc[0]), mc[0]))

    def split_sign(self, c):
        terms = self._sorted_terms(c.numer)
        if terms and terms[0][1] < 0:
            return True, -c
        return False, c

    def format(self, c):
        names = self.descriptor.parameters
        num_terms = c.numer.terms()
        den_terms = c.denom.terms()
        num_text, num_count = format_sparse(num_terms, names)
        if c.denom == c.denom.ring.one:
            if c == self.one:
                return "1", "one"
            return num_text, ("sum" if num_count > 1 else "factor")
        den_text, den_count = format_sparse(den_terms, names)
        if num_count > 1:
            num_text = f"({num_text})"
        bare_den = den_count == 1 and (
            (den_terms[0][1] == 1 and sum(1 for e in den_terms[0][0] if e) == 1)
            or (not any(den_terms[0][0]) and den_terms[0][1].denominator == 1)
        )
        if not bare_den:
            den_text = f"({den_text})"
        return f"{num_text}/{den_text}", "factor"

    def as_rational(self, c):
        c = self.convert(c)
        if c.numer.is_ground and c.denom.is_ground:
            return QQ.convert(c.numer.LC) / QQ.convert(c.denom.LC) if c else QQ(0)
        return None


class CyclotomicNumber:
    """Element of QQ[z]/Phi_n(z); ``rep`` holds QQ coefficients, highest degree first."""

    __slots__ = ("field", "rep")

    def __init__(self, field: "CyclotomicField", rep: Tuple):
        self.field = field
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.field.descriptor != self.field.descriptor:
                raise MixedFields("cyclotomic numbers from different fields",
                                  left=self.field.descriptor, right=other.field.descriptor)
            return other
        if isinstance(other, (int, Fraction)) or QQ.of_type(other):
            return self.field.convert(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.make(dup_add(list(self.rep), list(other.rep), QQ))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.make(dup_sub(list(self.rep), list(other.rep), QQ))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.make(dup_mul(list(self.rep), list(other.rep), QQ))

    __rmul__ = __mul__

    def __neg__(self):
        return self.field.make(dup_neg(list(self.rep), QQ))

    def inverse(self) -> "CyclotomicNumber":
        if not self.rep:
            raise DivisionByZero("zero has no inverse", field=self.field.descriptor)
        return self.field.make(dup_invert(list(self.rep), self.field.modulus, QQ))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except MixedFields:
            return False
        if other is NotImplemented:
            return False
        return self.rep == other.rep

    def __hash__(self):
        if len(self.rep) <= 1:
            return hash(self.rep[0] if self.rep else 0)
        return hash((self.field.descriptor.order, self.rep))

    def __bool__(self):
        return bool(self.rep)

    def __repr__(self):
        return f"CyclotomicNumber({self.field.format(self)[0]})"


class CyclotomicField(CoefficientField):
    def __init__(self, descriptor: FieldDescriptor):
        super().__init__(descriptor)
        self.n = descriptor.order
        self.modulus = [QQ(c) for c in cyclotomic_polynomial(self.n)]
        self.degree = len(self.modulus) - 1
        self.zero = CyclotomicNumber(self, ())
        self.one = CyclotomicNumber(self, (QQ(1),))
        self.generator = self.make([QQ(1), QQ(0)])
        self._name = f"zeta({self.n})"

    def make(self, rep: List) -> CyclotomicNumber:
        rep = dup_strip(rep)
        if len(rep) > self.degree:
            rep = dup_rem(rep, self.modulus, QQ)
        return CyclotomicNumber(self, tuple(rep))

    def convert(self, value):
        if isinstance(value, CyclotomicNumber):
            if value.field.descriptor != self.descriptor:
                raise MixedFields("cyclotomic number from another field", value=repr(value))
            return value
        if isinstance(value, Fraction):
            value = QQ(value.numerator, value.denominator)
        if isinstance(value, int) or QQ.of_type(value):
            return self.make([QQ.convert(value)])
        raise MixedFields(f"cannot convert into {self.descriptor}", value=repr(value))

    def owns(self, value) -> bool:
        if isinstance(value, CyclotomicNumber):
            return value.field.descriptor == self.descriptor
        return isinstance(value, (int, Fraction)) or QQ.of_type(value)

    def zeta(self, m: int):
        if m < 1 or self.n % m:
            return None
        return self.generator ** (self.n // m)

    def _terms(self, c: CyclotomicNumber):
        top = len(c.rep) - 1
        return [((top - i,), coeff) for i, coeff in enumerate(c.rep) if coeff]

    def split_sign(self, c):
        terms = sorted(self._terms(c))
        if terms and terms[0][1] < 0:
            return True, -c
        return False, c

    def format(self, c):
        if c == self.one:
            return "1", "one"
        text, count = format_sparse(self._terms(c), [self._name])
        return text, ("sum" if count > 1 else "factor")

    def as_rational(self, c):
        c = self.convert(c)
        if len(c.rep) <= 1:
            return c.rep[0] if c.rep else QQ(0)
        return None

    def root_of_unity_order(self, c) -> Optional[int]:
        if not c:
            raise ZeroInput("root_of_unity_order of zero", field=self.descriptor)
        c = self.convert(c)
        for m in divisors(lcm(2, self.n)):
            if c ** m == self.one:
                return m
        return None


@lru_cache(maxsize=None)
def get_field(descriptor: FieldDescriptor) -> CoefficientField:
    if descriptor.kind is FieldKind.RATIONALS:
        return RationalField(descriptor)
    if descriptor.kind is FieldKind.RATIONAL_FUNCTIONS:
        return RationalFunctionField(descriptor)
    return CyclotomicField(descriptor)


def field_of(value) -> CoefficientField:
    if isinstance(value, CyclotomicNumber):
        return value.field
    if isinstance(value, FracElement):
        names = tuple(str(s) for s in value.field.symbols)
        return get_field(FieldDescriptor.rational_functions(*names))
    if isinstance(value, (int, Fraction)) or QQ.of_type(value):
        return get_field(FieldDescriptor.rationals())
    raise MixedFields("not a coefficient", value=repr(value))


_OPS = {"add": "add", "sub": "sub", "mul": "mul", "div": "div"}


def field_arithmetic(a, b, op: str):
    """Exact a (op) b for two coefficients of the same field."""
    if op not in _OPS:
        raise ValueError(f"unknown field operation: {op}")
    fa, fb = field_of(a), field_of(b)
    if fa.descriptor != fb.descriptor:
        raise MixedFields("operands belong to different fields", left=fa.descriptor, right=fb.descriptor)
    return getattr(fa, _OPS[op])(a, b)


def root_of_unity_order(c) -> Optional[int]:
    return field_of(c).root_of_unity_order(c)
