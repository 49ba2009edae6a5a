"""The sigma-deformed Witt algebra (A, sigma, [.,.]) and its exact residual checks.

partial = (Id - sigma)/g, bracket [a, b] = sigma(a) partial(b) - sigma(b) partial(a),
delta = sigma(g)/g and the Hom-Lie twist sigma1 = sigma + delta * Id.
"""
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, Optional, Tuple

from ..core.errors import (
    DeltaNotInRing,
    InvalidOverride,
    MixedRings,
    NotDivisible,
    SigmaIsIdentityOnSample,
)
from ..core.logging import get_logger
from .endo import Answer, Endomorphism, HypothesisCheck
from .ring import (
    Exponents,
    RingDescriptor,
    RingElement,
    exact_divide,
    gcd_normalized,
    is_unit,
    shell,
    try_divide,
    window_exponents,
)


@dataclass(frozen=True)
class StabilizationReport:
    window: int
    samples: int
    stabilized_at: int
    stable_early: bool
    short_circuit: bool = False

    def to_dict(self) -> dict:
        return {
            "window": self.window,
            "samples": self.samples,
            "stabilized_at": self.stabilized_at,
            "stable_early": self.stable_early,
            "short_circuit": self.short_circuit,
        }


class GProvenance(str, Enum):
    COMPUTED_GCD = "computed-gcd"
    PRESET_OVERRIDE = "preset-override"


def compute_g(ring: RingDescriptor, sigma: Endomorphism, window: int) -> Tuple[RingElement, StabilizationReport]:
    """gcd of (Id - sigma)(x^k) over the monomials of the window, shell by shell."""
    running: Optional[RingElement] = None
    last_change = 0
    samples = 0
    for e in window_exponents(ring, window):
        m = ring.monomial(e)
        image = m - sigma.apply(m)
        if not image:
            continue
        samples += 1
        r = shell(e)
        if is_unit(image):
            report = StabilizationReport(window, samples, r, (window - r) * 2 >= window, short_circuit=True)
            return ring.one(), report
        updated = gcd_normalized([image] if running is None else [running, image])
        if updated != running:
            running = updated
            last_change = r
    if running is None:
        raise SigmaIsIdentityOnSample("sigma fixes every monomial of the window", window=window)
    return running, StabilizationReport(window, samples, last_change, (window - last_change) * 2 >= window)


@dataclass(frozen=True)
class DeformedWittAlgebra:
    ring: RingDescriptor
    sigma: Endomorphism
    g: RingElement
    delta: RingElement
    provenance: GProvenance
    unit_factor: RingElement
    stabilization: StabilizationReport
    window: int
    _partials: Dict[Exponents, RingElement] = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def delta_in_field(self) -> bool:
        return self.delta.is_constant and bool(self.delta)

    def to_dict(self) -> dict:
        from ..cli.expressions import format_element

        return {
            "ring": str(self.ring),
            "sigma": self.sigma.to_dict(),
            "g": format_element(self.g),
            "delta": format_element(self.delta),
            "provenance": self.provenance.value,
            "unit_factor": format_element(self.unit_factor),
            "stabilization": self.stabilization.to_dict(),
        }


def make_algebra(
    ring: RingDescriptor,
    sigma: Endomorphism,
    g_override: Optional[RingElement] = None,
    window: int = 12,
) -> DeformedWittAlgebra:
    if sigma.is_identity:
        raise SigmaIsIdentityOnSample("sigma is the identity map")
    computed, report = compute_g(ring, sigma, window)
    g, unit, provenance = computed, ring.one(), GProvenance.COMPUTED_GCD
    if g_override is not None:
        if g_override.ring != ring:
            raise MixedRings("g override lives in another ring")
        unit = try_divide(g_override, computed)
        if unit is None or try_divide(computed, g_override) is None:
            raise InvalidOverride("g override is not an associate of the computed gcd",
                                  override=g_override, computed=computed)
        g, provenance = g_override, GProvenance.PRESET_OVERRIDE

    for e in window_exponents(ring, window):
        m = ring.monomial(e)
        if try_divide(m - sigma.apply(m), g) is None:
            raise InvalidOverride("g does not divide (Id - sigma)(m) inside the window", monomial=e)

    delta = try_divide(sigma.apply(g), g)
    if delta is None:
        raise DeltaNotInRing("sigma(g) is not divisible by g", g=g)

    algebra = DeformedWittAlgebra(ring, sigma, g, delta, provenance, unit, report, window)
    get_logger().log("algebra_built", {
        "ring": str(ring),
        "provenance": provenance.value,
        "stabilized_at": report.stabilized_at,
        "stable_early": report.stable_early,
    })
    return algebra


def _partial_monomial(W: DeformedWittAlgebra, e: Exponents) -> RingElement:
    hit = W._partials.get(e)
    if hit is not None:
        return hit
    m = W.ring.monomial(e)
    try:
        value = exact_divide(m - W.sigma.apply(m), W.g)
    except NotDivisible as err:
        raise NotDivisible("g does not divide (Id - sigma)(m); the validation window was too small",
                           monomial=e, g=W.g, window=W.window) from err
    W._partials[e] = value
    return value


def partial(W: DeformedWittAlgebra, a: RingElement) -> RingElement:
    if a.ring != W.ring:
        raise MixedRings("element lives in another ring", element=a.ring, algebra=W.ring)
    result = W.ring.zero()
    for e, c in a.terms.items():
        result = result + _partial_monomial(W, e).scale(c)
    return result


def bracket(W: DeformedWittAlgebra, a: RingElement, b: RingElement) -> RingElement:
    sigma = W.sigma
    return sigma.apply(a) * partial(W, b) - sigma.apply(b) * partial(W, a)


def sigma1_apply(W: DeformedWittAlgebra, a: RingElement) -> RingElement:
    return W.sigma.apply(a) + W.delta * a


# --- residuals (all identically zero on a valid algebra unless noted) ---

def leibniz_residual(W: DeformedWittAlgebra, a: RingElement, b: RingElement) -> RingElement:
    return partial(W, a * b) - partial(W, a) * b - W.sigma.apply(a) * partial(W, b)


def twist_residual(W: DeformedWittAlgebra, a: RingElement) -> RingElement:
    return partial(W, W.sigma.apply(a)) - W.delta * W.sigma.apply(partial(W, a))


def skew_residual(W: DeformedWittAlgebra, a: RingElement, b: RingElement) -> RingElement:
    return bracket(W, a, b) + bracket(W, b, a)


def bilinearity_residual(W: DeformedWittAlgebra, a, b, c, lam, mu) -> RingElement:
    """[lam a + mu b, c] - lam [a, c] - mu [b, c] for scalars lam, mu."""
    left = bracket(W, a.scale(lam) + b.scale(mu), c)
    return left - bracket(W, a, c).scale(lam) - bracket(W, b, c).scale(mu)


def generalized_jacobi_residual(W: DeformedWittAlgebra, a, b, c) -> RingElement:
    total = W.ring.zero()
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        inner = bracket(W, y, z)
        total = total + bracket(W, W.sigma.apply(x), inner) + W.delta * bracket(W, x, inner)
    return total


def hom_jacobi_residual(W: DeformedWittAlgebra, a, b, c) -> RingElement:
    """Cyclic sum of [sigma1(x), [y, z]].

    Vanishes identically: it equals the generalized Jacobi residual minus
    partial(delta) * cyclic_sigma_sum(a, b, c), and both terms are zero.
    """
    total = W.ring.zero()
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        total = total + bracket(W, sigma1_apply(W, x), bracket(W, y, z))
    return total


def cyclic_sigma_sum(W: DeformedWittAlgebra, a, b, c) -> RingElement:
    """sigma(a)[b, c] + sigma(b)[c, a] + sigma(c)[a, b]; zero for every triple."""
    total = W.ring.zero()
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        total = total + W.sigma.apply(x) * bracket(W, y, z)
    return total


def sigma_identity_residual(W: DeformedWittAlgebra, a: RingElement) -> RingElement:
    """sigma(a) - (a - g partial(a))."""
    return W.sigma.apply(a) - (a - W.g * partial(W, a))


def unit_bracket_residual(W: DeformedWittAlgebra, a: RingElement) -> RingElement:
    return bracket(W, W.ring.one(), a) - partial(W, a)


@dataclass(frozen=True)
class HomJacobiSearch:
    bound: int
    searched: int
    triple: Optional[Tuple[RingElement, RingElement, RingElement]] = None
    residual: Optional[RingElement] = None

    @property
    def found(self) -> bool:
        return self.triple is not None

    def to_dict(self) -> dict:
        from ..cli.expressions import format_element

        return {
            "bound": self.bound,
            "searched": self.searched,
            "triple": [format_element(x) for x in self.triple] if self.triple else None,
            "residual": format_element(self.residual) if self.residual is not None else None,
        }


def search_hom_jacobi(W: DeformedWittAlgebra, bound: int = 3) -> HomJacobiSearch:
    """Scan monomial triples with exponents in [-bound, bound] for a nonzero Hom-Jacobi residual."""
    monomials = [W.ring.monomial(e) for e in window_exponents(W.ring, bound)]
    searched = 0
    for a, b, c in combinations(monomials, 3):
        searched += 1
        residual = hom_jacobi_residual(W, a, b, c)
        if residual:
            return HomJacobiSearch(bound, searched, (a, b, c), residual)
    return HomJacobiSearch(bound, searched)


def is_partial_surjective(W: DeformedWittAlgebra) -> HypothesisCheck:
    """Decide partial(A) = A when sigma is diagonal and g is a scalar times a monomial.

    Then partial(x^k) = (1 - mu_k)/c * x^(k - gamma) for g = c x^gamma, so x^j has a
    preimage iff x^(j + gamma) lies in the ring and its eigenvalue mu is not 1.
    """
    ring, sigma = W.ring, W.sigma
    if not sigma.is_diagonal:
        return HypothesisCheck(Answer.UNKNOWN, detail="sigma is not diagonal on monomials")
    if len(W.g.terms) != 1:
        return HypothesisCheck(Answer.UNKNOWN, detail="g is not a monomial, partial is not diagonal")
    gamma = W.g.trailing_term()[0]
    one = ring.coefficients.one
    for j in window_exponents(ring, W.window):
        source = tuple(x + y for x, y in zip(j, gamma))
        if not ring.allowed(source):
            return HypothesisCheck(Answer.NO, ring.monomial(j), detail="no monomial maps onto this one")
        if sigma.eigenvalue(source) == one:
            return HypothesisCheck(Answer.NO, ring.monomial(j),
                                   detail="its only candidate preimage is fixed by sigma")
    if ring.nvars != 1:
        return HypothesisCheck(Answer.UNKNOWN, detail="no failure inside the window")
    if ring.laurent[0]:
        return HypothesisCheck(Answer.NO, ring.monomial((-gamma[0],)), detail="constants are annihilated")
    order = ring.coefficients.root_of_unity_order(sigma.scalars[0])
    if order is not None:
        target = (order - gamma[0],)
        return HypothesisCheck(Answer.NO, ring.monomial(target),
                               detail=f"sigma has finite order {order} on the variable")
    return HypothesisCheck(Answer.YES, detail="eigenvalues 1 - q^k never vanish for q of infinite order")
