"""Sparse multivariate (Laurent) polynomials over an exact coefficient field.

A :class:`RingElement` maps exponent vectors to nonzero coefficients. Terms are kept in
ascending graded-lex order (total degree, then the exponent tuple), which fixes the
formatting order and makes equality and hashing structural.
"""
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.densearith import dup_rem
from sympy.polys.densetools import dup_monic

from ..core.errors import (
    AllZero,
    DivisionByZero,
    MixedRings,
    NotDivisible,
    UnsupportedMultivariateGcd,
)
from .coeff import IDENTIFIER, RESERVED_NAMES, Coefficient, CoefficientField, FieldDescriptor, get_field

Exponents = Tuple[int, ...]


def glex_key(e: Exponents):
    return (sum(e), e)


def _add(e: Exponents, f: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(e, f))


def _sub(e: Exponents, f: Exponents) -> Exponents:
    return tuple(x - y for x, y in zip(e, f))


@dataclass(frozen=True)
class RingDescriptor:
    field: FieldDescriptor
    variables: Tuple[str, ...]
    laurent: Tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "laurent", tuple(bool(x) for x in self.laurent))
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        if len(self.laurent) != len(self.variables):
            raise ValueError("one laurent flag per variable is required")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names: {self.variables}")
        for name in self.variables:
            if not IDENTIFIER.match(name) or name in RESERVED_NAMES:
                raise ValueError(f"invalid variable name: {name!r}")
            if name in self.field.parameters:
                raise ValueError(f"variable {name!r} clashes with a field parameter")

    @classmethod
    def univariate(cls, field: FieldDescriptor, name: str = "t", laurent: bool = False) -> "RingDescriptor":
        return cls(field, (name,), (laurent,))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def coefficients(self) -> CoefficientField:
        return get_field(self.field)

    @property
    def all_laurent(self) -> bool:
        return all(self.laurent)

    @property
    def no_laurent(self) -> bool:
        return not any(self.laurent)

    def allowed(self, e: Exponents) -> bool:
        return len(e) == self.nvars and all(l or x >= 0 for x, l in zip(e, self.laurent))

    def zero(self) -> "RingElement":
        return RingElement(self, {}, trusted=True)

    def one(self) -> "RingElement":
        return self.constant(1)

    def constant(self, c) -> "RingElement":
        c = self.coefficients.convert(c)
        return RingElement(self, {(0,) * self.nvars: c}, trusted=True)

    def monomial(self, exponents: Sequence[int], coeff=1) -> "RingElement":
        return RingElement(self, {tuple(exponents): self.coefficients.convert(coeff)})

    def variable(self, name: Union[str, int]) -> "RingElement":
        index = self.variables.index(name) if isinstance(name, str) else name
        e = [0] * self.nvars
        e[index] = 1
        return RingElement(self, {tuple(e): self.coefficients.one}, trusted=True)

    def element(self, terms: Mapping[Sequence[int], Coefficient]) -> "RingElement":
        return RingElement(self, {tuple(e): c for e, c in terms.items()})

    def __str__(self) -> str:
        gens = ", ".join(f"{v}^±1" if l else v for v, l in zip(self.variables, self.laurent))
        return f"{self.field}[{gens}]"

    def to_dict(self) -> dict:
        return {"field": str(self.field), "variables": list(self.variables), "laurent": list(self.laurent)}


class RingElement:
    """Immutable sparse (Laurent) polynomial; ``terms`` must not be mutated."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingDescriptor, terms: Mapping[Exponents, Coefficient], trusted: bool = False):
        if not trusted:
            field = ring.coefficients
            checked: Dict[Exponents, Coefficient] = {}
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if not ring.allowed(e):
                    raise ValueError(f"exponent {e} not allowed in {ring}")
                checked[e] = field.convert(c)
            terms = checked
        self.ring = ring
        self.terms: Dict[Exponents, Coefficient] = dict(
            sorted(((e, c) for e, c in terms.items() if c), key=lambda ec: glex_key(ec[0]))
        )
        self._hash = None

    # --- structure ---

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return (other.ring is self.ring or other.ring == self.ring) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, tuple(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from ..cli.expressions import format_element

        return f"RingElement({format_element(self)})"

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coefficient(self) -> Coefficient:
        return self.terms.get((0,) * self.ring.nvars, self.ring.coefficients.zero)

    def coefficient(self, exponents: Sequence[int]) -> Coefficient:
        return self.terms.get(tuple(exponents), self.ring.coefficients.zero)

    def leading_term(self) -> Tuple[Exponents, Coefficient]:
        e = next(reversed(self.terms))
        return e, self.terms[e]

    def trailing_term(self) -> Tuple[Exponents, Coefficient]:
        e = next(iter(self.terms))
        return e, self.terms[e]

    def degree(self) -> int:
        """Total degree of the graded-lex leading term; -1 for zero."""
        if not self.terms:
            return -1
        return sum(self.leading_term()[0])

    def support(self) -> List[Exponents]:
        return list(self.terms)

    def monomials(self) -> List["RingElement"]:
        """Each term as its own ring element (coefficient included)."""
        return [RingElement(self.ring, {e: c}, trusted=True) for e, c in self.terms.items()]

    # --- arithmetic ---

    def _same_ring(self, other: "RingElement") -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise MixedRings("operands live in different rings", left=self.ring, right=other.ring)

    def _lift(self, other) -> Optional["RingElement"]:
        if isinstance(other, RingElement):
            self._same_ring(other)
            return other
        try:
            return self.ring.constant(other)
        except Exception:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        return RingElement(self.ring, terms, trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {e: -c for e, c in self.terms.items()}, trusted=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, RingElement):
            try:
                c = self.ring.coefficients.convert(other)
            except Exception:
                return NotImplemented
            return self.scale(c)
        self._same_ring(other)
        terms: Dict[Exponents, Coefficient] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add(e1, e2)
                v = c1 * c2
                if e in terms:
                    terms[e] = terms[e] + v
                else:
                    terms[e] = v
        return RingElement(self.ring, terms, trusted=True)

    __rmul__ = __mul__

    def scale(self, c: Coefficient) -> "RingElement":
        if not c:
            return self.ring.zero()
        return RingElement(self.ring, {e: v * c for e, v in self.terms.items()}, trusted=True)

    def shifted(self, shift: Sequence[int]) -> "RingElement":
        """Multiply by the monomial x^shift (caller guarantees the result is allowed)."""
        shift = tuple(shift)
        return RingElement(self.ring, {_add(e, shift): c for e, c in self.terms.items()}, trusted=True)

    def __pow__(self, k: int) -> "RingElement":
        if k < 0:
            return unit_inverse(self) ** (-k)
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def poly_arithmetic(a: RingElement, b: RingElement, op: str) -> RingElement:
    if not isinstance(a, RingElement) or not isinstance(b, RingElement):
        raise TypeError("poly_arithmetic takes two ring elements")
    a._same_ring(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring operation: {op}")


def is_unit(a: RingElement) -> bool:
    if len(a.terms) != 1:
        return False
    e = next(iter(a.terms))
    return all(x == 0 or l for x, l in zip(e, a.ring.laurent))


def unit_inverse(a: RingElement) -> RingElement:
    if not is_unit(a):
        raise NotDivisible("element is not a unit", element=a)
    e, c = a.trailing_term()
    return RingElement(a.ring, {tuple(-x for x in e): a.ring.coefficients.inverse(c)}, trusted=True)


def _laurent_floor(a: RingElement) -> Exponents:
    """Per-variable minimum exponent on Laurent variables, 0 elsewhere."""
    return tuple(
        min(e[i] for e in a.terms) if l else 0 for i, l in enumerate(a.ring.laurent)
    )


def exact_divide(a: RingElement, b: RingElement) -> RingElement:
    """Return c with b*c = a, or raise NotDivisible.

    Laurent variables are first shifted to a lowest exponent of 0 in both operands, so the
    division runs on ordinary polynomials where graded-lex is a well order.
    """
    a._same_ring(b)
    if not b:
        raise DivisionByZero("exact_divide by zero", dividend=a)
    ring = a.ring
    if not a:
        return ring.zero()
    field = ring.coefficients

    if len(b.terms) == 1:
        eb, cb = b.trailing_term()
        inv = field.inverse(cb)
        terms = {}
        for e, c in a.terms.items():
            d = _sub(e, eb)
            if not ring.allowed(d):
                raise NotDivisible("monomial divisor does not divide", dividend=a, divisor=b)
            terms[d] = c * inv
        return RingElement(ring, terms, trusted=True)

    sa, sb = _laurent_floor(a), _laurent_floor(b)
    num = a.shifted(tuple(-x for x in sa))
    den = b.shifted(tuple(-x for x in sb))
    lead_e, lead_c = den.leading_term()
    lead_inv = field.inverse(lead_c)
    remainder = dict(num.terms)
    quotient: Dict[Exponents, Coefficient] = {}
    while remainder:
        e = max(remainder, key=glex_key)
        d = _sub(e, lead_e)
        if any(x < 0 for x in d):
            raise NotDivisible("division leaves a remainder", dividend=a, divisor=b)
        q = remainder[e] * lead_inv
        quotient[d] = q
        for de, dc in den.terms.items():
            key = _add(d, de)
            value = remainder.get(key)
            value = -(q * dc) if value is None else value - q * dc
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    result = RingElement(ring, quotient, trusted=True).shifted(_sub(sa, sb))
    if not all(ring.allowed(e) for e in result.terms):
        raise NotDivisible("quotient leaves the ring", dividend=a, divisor=b)
    return result


def try_divide(a: RingElement, b: RingElement) -> Optional[RingElement]:
    try:
        return exact_divide(a, b)
    except NotDivisible:
        return None


def divides(b: RingElement, a: RingElement) -> bool:
    return try_divide(a, b) is not None


# --- univariate gcd on sympy dense polynomials ---

def _dense(a: RingElement, field: CoefficientField) -> List[Coefficient]:
    """Coefficients highest degree first, the layout of sympy's dup_* routines."""
    top = max(e[0] for e in a.terms)
    dense = [field.zero] * (top + 1)
    for e, c in a.terms.items():
        dense[top - e[0]] = c
    return dense


def _normalize_univariate(a: RingElement) -> RingElement:
    if a.ring.laurent[0]:
        a = a.shifted(tuple(-x for x in _laurent_floor(a)))
    return a


def gcd_normalized(elems: Iterable[RingElement]) -> RingElement:
    """Canonical associate of gcd(elems).

    Univariate: monic, Laurent inputs shifted to lowest exponent 0 first. Multivariate inputs
    are supported when one input is a unit or all inputs are scalar multiples of monomials.
    """
    elems = list(elems)
    if not elems:
        raise AllZero("gcd of an empty list")
    ring = elems[0].ring
    for e in elems[1:]:
        elems[0]._same_ring(e)
    nonzero = [e for e in elems if e]
    if not nonzero:
        raise AllZero("gcd of zero elements")
    field = ring.coefficients
    if any(is_unit(e) for e in nonzero):
        return ring.one()

    if all(len(e.terms) == 1 for e in nonzero):
        exps = [next(iter(e.terms)) for e in nonzero]
        g = tuple(0 if l else min(x[i] for x in exps) for i, l in enumerate(ring.laurent))
        return ring.monomial(g)

    if ring.nvars != 1:
        raise UnsupportedMultivariateGcd("multivariate gcd is only supported for units and monomials",
                                         ring=ring, inputs=len(nonzero))

    K = field.domain
    result: Optional[List[Coefficient]] = None
    for e in nonzero:
        f = _dense(_normalize_univariate(e), field)
        if result is None:
            result = f
            continue
        a, b = result, f
        while b:
            a, b = b, dup_rem(a, b, K)
        result = a
    result = dup_monic(result, K)
    top = len(result) - 1
    return RingElement(ring, {(top - i,): c for i, c in enumerate(result) if c}, trusted=True)


def canonical_associate(a: RingElement) -> RingElement:
    """Divide by the unit part of the lowest graded-lex term.

    The lowest term becomes coefficient 1 and carries no Laurent-variable factor, so two
    associates always normalise to the same element.
    """
    if not a:
        return a
    e, c = a.trailing_term()
    shift = tuple(-x if l else 0 for x, l in zip(e, a.ring.laurent))
    return a.shifted(shift).scale(a.ring.coefficients.inverse(c))


def window_exponents(ring: RingDescriptor, window: int) -> List[Exponents]:
    """Exponent vectors with |e_i| <= window (Laurent) or 0 <= e_i <= window.

    Ordered by shell (max |e_i|), then graded-lex.
    """
    ranges = [range(-window, window + 1) if l else range(0, window + 1) for l in ring.laurent]
    vectors = list(product(*ranges))
    vectors.sort(key=lambda e: (max((abs(x) for x in e), default=0), glex_key(e)))
    return vectors


def shell(e: Exponents) -> int:
    return max((abs(x) for x in e), default=0)
