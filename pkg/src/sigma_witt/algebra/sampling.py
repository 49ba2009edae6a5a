"""Seeded random ring elements for the residual suites and oracle checks."""

import numpy as np

from .coeff import FieldKind
from .ring import RingDescriptor, RingElement


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_coefficient(ring: RingDescriptor, rng: np.random.Generator, coeff_bound: int = 5):
    """Nonzero integer, sometimes times a power of a parameter (or of the cyclotomic generator)."""
    field = ring.coefficients
    value = int(rng.integers(1, coeff_bound + 1))
    if rng.random() < 0.5:
        value = -value
    c = field.convert(value)
    descriptor = field.descriptor
    if descriptor.kind is FieldKind.RATIONAL_FUNCTIONS and rng.random() < 0.5:
        name = descriptor.parameters[int(rng.integers(0, len(descriptor.parameters)))]
        c = c * field.parameter(name) ** int(rng.integers(1, 3))
    elif descriptor.kind is FieldKind.CYCLOTOMIC and rng.random() < 0.5:
        c = c * field.zeta(descriptor.order) ** int(rng.integers(1, descriptor.order + 1))
    return c


def random_exponents(ring: RingDescriptor, rng: np.random.Generator, max_degree: int) -> tuple:
    return tuple(
        int(rng.integers(-max_degree, max_degree + 1)) if laurent else int(rng.integers(0, max_degree + 1))
        for laurent in ring.laurent
    )


def random_element(
    ring: RingDescriptor,
    rng: np.random.Generator,
    max_terms: int = 4,
    max_degree: int = 8,
    coeff_bound: int = 5,
    nonzero: bool = True,
) -> RingElement:
    while True:
        count = int(rng.integers(1, max_terms + 1))
        terms = {}
        for _ in range(count):
            terms[random_exponents(ring, rng, max_degree)] = random_coefficient(ring, rng, coeff_bound)
        element = RingElement(ring, terms, trusted=True)
        if element or not nonzero:
            return element
