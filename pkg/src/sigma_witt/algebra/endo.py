"""Monomial-scalar endomorphisms sigma(x_i) = c_i * x^(row_i) and their hypothesis checks.

The exponent matrix E has the exponent vector of sigma(x_i) as row i, so a monomial x^k maps
to (prod c_i^k_i) * x^(k E).
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, ilcm

from ..core.errors import MixedRings, NegativeExponentOnNonUnit, UnsupportedSigma
from .coeff import Coefficient
from .ring import Exponents, RingDescriptor, RingElement


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class HypothesisCheck:
    answer: Answer
    witness: Optional[RingElement] = None
    detail: str = ""

    def to_dict(self) -> dict:
        from ..cli.expressions import format_element

        return {
            "answer": self.answer.value,
            "witness": format_element(self.witness) if self.witness is not None else None,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Endomorphism:
    ring: RingDescriptor
    scalars: Tuple[Coefficient, ...]
    exponents: Tuple[Exponents, ...]
    _cache: Dict[Exponents, Tuple[Exponents, Coefficient]] = field(
        default_factory=dict, compare=False, hash=False, repr=False
    )

    def __post_init__(self):
        ring = self.ring
        n = ring.nvars
        field_ = ring.coefficients
        object.__setattr__(self, "scalars", tuple(field_.convert(c) for c in self.scalars))
        object.__setattr__(self, "exponents", tuple(tuple(int(x) for x in row) for row in self.exponents))
        if len(self.scalars) != n or len(self.exponents) != n or any(len(r) != n for r in self.exponents):
            raise ValueError(f"an endomorphism of {ring} needs {n} images")
        for i, (c, row) in enumerate(zip(self.scalars, self.exponents)):
            name = ring.variables[i]
            if not c:
                raise UnsupportedSigma(f"image of {name} is zero", variable=name)
            if not ring.allowed(row):
                raise NegativeExponentOnNonUnit(f"image of {name} leaves the ring", variable=name)
            if ring.laurent[i] and any(x and not l for x, l in zip(row, ring.laurent)):
                raise NegativeExponentOnNonUnit(
                    f"{name} is invertible but its image is not a unit", variable=name
                )

    @classmethod
    def from_images(cls, ring: RingDescriptor, images: Sequence[RingElement]) -> "Endomorphism":
        scalars, rows = [], []
        for name, image in zip(ring.variables, images):
            if len(image.terms) != 1:
                raise UnsupportedSigma(f"image of {name} is not a scalar times a monomial", variable=name)
            e, c = image.trailing_term()
            scalars.append(c)
            rows.append(e)
        return cls(ring, tuple(scalars), tuple(rows))

    @classmethod
    def identity(cls, ring: RingDescriptor) -> "Endomorphism":
        one = ring.coefficients.one
        rows = tuple(tuple(int(i == j) for j in range(ring.nvars)) for i in range(ring.nvars))
        return cls(ring, (one,) * ring.nvars, rows)

    @classmethod
    def diagonal(cls, ring: RingDescriptor, scalars: Sequence) -> "Endomorphism":
        rows = tuple(tuple(int(i == j) for j in range(ring.nvars)) for i in range(ring.nvars))
        return cls(ring, tuple(scalars), rows)

    # --- action ---

    def image_of_monomial(self, k: Exponents) -> Tuple[Exponents, Coefficient]:
        """(exponent, scalar) with sigma(x^k) = scalar * x^exponent."""
        hit = self._cache.get(k)
        if hit is not None:
            return hit
        field_ = self.ring.coefficients
        scalar = field_.one
        exps = [0] * self.ring.nvars
        for ki, c, row in zip(k, self.scalars, self.exponents):
            if ki:
                scalar = scalar * field_.pow(c, ki)
                for j, r in enumerate(row):
                    exps[j] += ki * r
        result = (tuple(exps), scalar)
        self._cache[k] = result
        return result

    def eigenvalue(self, k: Exponents) -> Coefficient:
        return self.image_of_monomial(k)[1]

    def apply(self, a: RingElement) -> RingElement:
        if a.ring != self.ring:
            raise MixedRings("element and endomorphism live in different rings", element=a.ring, sigma=self.ring)
        terms: Dict[Exponents, Coefficient] = {}
        for e, c in a.terms.items():
            image, scalar = self.image_of_monomial(e)
            value = c * scalar
            terms[image] = terms[image] + value if image in terms else value
        return RingElement(self.ring, terms, trusted=True)

    __call__ = apply

    def images(self) -> List[RingElement]:
        return [RingElement(self.ring, {row: c}, trusted=True) for c, row in zip(self.scalars, self.exponents)]

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """self after other: x -> self(other(x))."""
        return Endomorphism.from_images(self.ring, [self.apply(img) for img in other.images()])

    def power(self, n: int) -> "Endomorphism":
        if n < 0:
            raise ValueError("only non-negative powers of an endomorphism are defined")
        result = Endomorphism.identity(self.ring)
        for _ in range(n):
            result = self.compose(result)
        return result

    # --- shape ---

    @property
    def is_diagonal(self) -> bool:
        return all(row[i] == 1 and sum(abs(x) for x in row) == 1 for i, row in enumerate(self.exponents))

    @property
    def is_identity(self) -> bool:
        one = self.ring.coefficients.one
        return self.is_diagonal and all(c == one for c in self.scalars)

    def matrix(self) -> Matrix:
        return Matrix([list(row) for row in self.exponents])

    def to_dict(self) -> dict:
        from ..cli.expressions import format_element

        return {v: format_element(img) for v, img in zip(self.ring.variables, self.images())}


def endo_apply(sigma: Endomorphism, a: RingElement) -> RingElement:
    return sigma.apply(a)


def fixed_by_sigma(sigma: Endomorphism, a: RingElement) -> bool:
    return sigma.apply(a) == a


def _unit_vector(n: int, j: int) -> Tuple[int, ...]:
    return tuple(int(i == j) for i in range(n))


def _integer_row(values) -> Optional[Tuple[int, ...]]:
    if all(v.is_integer for v in values):
        return tuple(int(v) for v in values)
    return None


def is_epimorphism(sigma: Endomorphism) -> HypothesisCheck:
    ring = sigma.ring
    n = ring.nvars
    E = sigma.matrix()
    if ring.all_laurent:
        det = E.det()
        if det in (1, -1):
            return HypothesisCheck(Answer.YES, detail=f"exponent matrix is invertible over ZZ (det {det})")
        if det == 0:
            rank = E.rank()
            for j in range(n):
                if Matrix.vstack(E, Matrix([list(_unit_vector(n, j))])).rank() > rank:
                    return HypothesisCheck(Answer.NO, ring.variable(j),
                                           detail=f"exponent matrix is singular (rank {rank})")
            return HypothesisCheck(Answer.UNKNOWN, detail="singular exponent matrix")
        inverse = E.inv()
        for j in range(n):
            if _integer_row(inverse.row(j)) is None:
                return HypothesisCheck(Answer.NO, ring.variable(j),
                                       detail=f"image exponent lattice has index {abs(det)}")
        return HypothesisCheck(Answer.UNKNOWN, detail="determinant is not a unit but no generator failed")
    if ring.no_laurent:
        rows = set(sigma.exponents)
        for j in range(n):
            if _unit_vector(n, j) not in rows:
                return HypothesisCheck(Answer.NO, ring.variable(j),
                                       detail="no generator image is a scalar multiple of this variable")
        return HypothesisCheck(Answer.YES, detail="every variable is a scalar multiple of a generator image")
    return HypothesisCheck(Answer.UNKNOWN, detail="mixed polynomial/Laurent rings are not decided")


def generator_preimages(sigma: Endomorphism) -> Dict[str, RingElement]:
    """Explicit preimage of every generator; requires is_epimorphism to answer yes."""
    check = is_epimorphism(sigma)
    if check.answer is not Answer.YES:
        raise UnsupportedSigma("generator preimages need an epimorphism", answer=check.answer.value)
    ring = sigma.ring
    field_ = ring.coefficients
    preimages: Dict[str, RingElement] = {}
    if ring.all_laurent:
        inverse = sigma.matrix().inv()
        for j, name in enumerate(ring.variables):
            k = _integer_row(inverse.row(j))
            _, scalar = sigma.image_of_monomial(k)
            preimages[name] = ring.monomial(k, field_.inverse(scalar))
    else:
        for j, name in enumerate(ring.variables):
            i = sigma.exponents.index(_unit_vector(ring.nvars, j))
            preimages[name] = ring.variable(i).scale(field_.inverse(sigma.scalars[i]))
    return preimages


def is_monomorphism(sigma: Endomorphism) -> HypothesisCheck:
    ring = sigma.ring
    E = sigma.matrix()
    if E.rank() == ring.nvars:
        return HypothesisCheck(Answer.YES, detail="distinct monomials have distinct images")
    v = E.T.nullspace()[0]
    scale = ilcm(*[x.q for x in v]) if len(v) > 1 else v[0].q
    ints = [int(x * scale) for x in v]
    plus = tuple(max(x, 0) for x in ints)
    minus = tuple(max(-x, 0) for x in ints)
    _, c_plus = sigma.image_of_monomial(plus)
    _, c_minus = sigma.image_of_monomial(minus)
    witness = ring.monomial(plus, c_minus) - ring.monomial(minus, c_plus)
    return HypothesisCheck(Answer.NO, witness, detail=f"exponent relation {tuple(ints)} maps to zero")
