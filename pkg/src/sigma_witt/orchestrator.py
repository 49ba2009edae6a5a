"""Scenario orchestrator: build the algebra, run the residual suites, hypotheses and verdict.

Steps run in a fixed order against one seeded generator, so a config and seed always
produce the same report. Wall-clock timings are logged, never reported.
"""
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from .algebra.deform import (
    DeformedWittAlgebra,
    bilinearity_residual,
    cyclic_sigma_sum,
    generalized_jacobi_residual,
    hom_jacobi_residual,
    is_partial_surjective,
    leibniz_residual,
    partial,
    search_hom_jacobi,
    sigma_identity_residual,
    skew_residual,
    twist_residual,
    unit_bracket_residual,
)
from .algebra.endo import Answer, generator_preimages, is_epimorphism, is_monomorphism
from .algebra.ideals import (
    HOM_LIE_NOTE,
    PrincipalIdeal,
    brute_force_stability,
    decide_simplicity,
    is_partial_stable,
)
from .algebra.ring import RingElement, try_divide
from .algebra.sampling import make_rng, random_coefficient, random_element
from .cli.expressions import format_element
from .core.config import ScenarioConfig
from .core.logging import get_logger
from .families import FamilyName

ALL_STEPS = ("algebra", "residuals", "invariants", "oracle", "hypotheses", "verdict")
AXIOM_STEPS = ("algebra", "residuals", "invariants")


@dataclass
class CheckResult:
    name: str
    samples: int
    failures: int = 0
    mandatory: bool = True
    witness: Optional[str] = None
    detail: str = ""

    @property
    def all_zero(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "samples": self.samples,
            "failures": self.failures,
            "all_zero": self.all_zero,
            "mandatory": self.mandatory,
            "witness": self.witness,
            "detail": self.detail,
        }


@dataclass
class Report:
    config: Dict[str, Any]
    algebra: Dict[str, Any] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
    hypotheses: Dict[str, Any] = field(default_factory=dict)
    verdict: Optional[Dict[str, Any]] = None
    contract_violations: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 1 if self.contract_violations else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": self.config,
            "algebra": self.algebra,
            "checks": [c.to_dict() for c in self.checks],
            "hypotheses": self.hypotheses,
            "verdicts": {"simplicity": self.verdict},
            "contract_violations": self.contract_violations,
            "notes": self.notes,
            "exit_code": self.exit_code,
        }


class ScenarioRun:
    """One pass over the configured steps."""

    def __init__(self, config: ScenarioConfig):
        self.config = config
        self.family = config.family
        self.windows = config.windows
        self.sampling = config.sampling
        self.rng = make_rng(config.seed)
        self.logger = get_logger()
        self.report = Report(config=config.to_dict())
        self.algebra: Optional[DeformedWittAlgebra] = None

    # --- sampling helpers ---

    def _elements(self, count: int, max_terms: Optional[int] = None) -> List[RingElement]:
        terms = min(max_terms or self.sampling.max_terms, self.sampling.max_terms)
        return [
            random_element(self.algebra.ring, self.rng, terms, self.sampling.max_degree, self.sampling.coeff_bound)
            for _ in range(count)
        ]

    def _suite(self, name: str, arity: int, residual: Callable[..., RingElement],
               samples: Optional[int] = None, max_terms: Optional[int] = None, mandatory: bool = True) -> CheckResult:
        samples = samples or self.windows.jacobi_samples
        result = CheckResult(name, samples, mandatory=mandatory)
        for _ in range(samples):
            args = self._elements(arity, max_terms)
            value = residual(self.algebra, *args)
            if value:
                result.failures += 1
                if result.witness is None:
                    result.witness = ", ".join(format_element(a) for a in args)
        self._record(result)
        return result

    def _record(self, result: CheckResult) -> None:
        self.report.checks.append(result)
        self.logger.log("residual_suite", {"check": result.name, "samples": result.samples,
                                           "failures": result.failures})
        if result.mandatory and not result.all_zero:
            self.report.contract_violations.append(
                f"{result.name}: {result.failures} of {result.samples} residuals are nonzero"
            )

    # --- steps ---

    def step_algebra(self) -> None:
        self.algebra = self.family.build_algebra(self.windows.gcd_window)
        self.report.algebra = self.algebra.to_dict()

    def step_residuals(self) -> None:
        W = self.algebra
        self._suite("leibniz", 2, leibniz_residual)
        self._suite("twist", 1, twist_residual)
        self._suite("skew_symmetry", 2, skew_residual)
        self._suite("bilinearity", 3, self._bilinearity, max_terms=3)
        self._suite("generalized_jacobi", 3, generalized_jacobi_residual, max_terms=3)
        self._suite("hom_jacobi", 3, hom_jacobi_residual, max_terms=3)
        if not W.delta_in_field:
            self._suite("cyclic_sigma_sum", 3, cyclic_sigma_sum, max_terms=3)
            search = search_hom_jacobi(W, self.windows.hom_jacobi_bound)
            result = CheckResult("hom_jacobi_monomial_search", search.searched, failures=1 if search.found else 0,
                                 detail=f"monomial triples with exponents in [-{search.bound}, {search.bound}]")
            if search.found:
                result.witness = ", ".join(format_element(a) for a in search.triple)
            else:
                self.report.notes.append(HOM_LIE_NOTE)
            self._record(result)

    def _bilinearity(self, W: DeformedWittAlgebra, a, b, c) -> RingElement:
        ring = W.ring
        lam = random_coefficient(ring, self.rng, self.sampling.coeff_bound)
        mu = random_coefficient(ring, self.rng, self.sampling.coeff_bound)
        return bilinearity_residual(W, a, b, c, lam, mu)

    def step_invariants(self) -> None:
        W = self.algebra
        one = W.ring.one()
        result = CheckResult("partial_of_one", 1, failures=1 if partial(W, one) else 0)
        self._record(result)
        self._suite("sigma_identity", 1, sigma_identity_residual)
        self._suite("unit_bracket", 1, unit_bracket_residual)
        if self.family.name is FamilyName.QWITT_POLY and W.g == self.family.g_override:
            self._record(self._jackson(W))

    def _jackson(self, W: DeformedWittAlgebra, top: int = 50) -> CheckResult:
        t = W.ring.variable("t")
        q = self.family.q
        result = CheckResult("jackson_derivative", top)
        q_integer = W.ring.coefficients.zero
        power = W.ring.coefficients.one
        for k in range(1, top + 1):
            q_integer = q_integer + power
            power = power * q
            if partial(W, t ** k) != (t ** (k - 1)).scale(q_integer):
                result.failures += 1
                result.witness = result.witness or f"t^{k}"
        return result

    def step_oracle(self) -> None:
        W = self.algebra
        samples = self.windows.oracle_samples
        result = CheckResult("oracle_agreement", samples)
        for p in self._elements(samples, max_terms=3):
            ideal = PrincipalIdeal(p)
            certificate = is_partial_stable(W, ideal)
            oracle = brute_force_stability(W, ideal, self.windows.multiplier_window)
            if certificate.stable != oracle.stable:
                result.failures += 1
                result.witness = result.witness or str(ideal)
        self._record(result)

    def step_hypotheses(self) -> None:
        W = self.algebra
        epi = is_epimorphism(W.sigma)
        hypotheses = {
            "epimorphism": epi.to_dict(),
            "monomorphism": is_monomorphism(W.sigma).to_dict(),
            "partial_surjective": is_partial_surjective(W).to_dict(),
            "delta_in_F": W.delta_in_field,
        }
        if epi.answer is Answer.YES:
            preimages = generator_preimages(W.sigma)
            hypotheses["generator_preimages"] = {v: format_element(p) for v, p in preimages.items()}
            for name, p in preimages.items():
                if W.sigma.apply(p) != W.ring.variable(name):
                    self.report.contract_violations.append(f"preimage of {name} does not round-trip")
        self.report.hypotheses = hypotheses

    def step_verdict(self) -> None:
        if self.family.name is FamilyName.CUSTOM:
            self.report.notes.append("simplicity is only decided for the preset families")
            return
        W = self.algebra
        verdict = decide_simplicity(self.family, self.windows, self.config.seed, algebra=W)
        self.report.verdict = verdict.to_dict()
        if any(e.get("kind") == "witness_rejected" for e in verdict.evidence):
            self.report.contract_violations.append("simplicity witness failed its own certificate")
        if verdict.witness is not None:
            self._record(self._sigma_stability(W, verdict.witness))

    def _sigma_stability(self, W: DeformedWittAlgebra, ideal: PrincipalIdeal) -> CheckResult:
        samples = min(self.windows.oracle_samples, 20)
        result = CheckResult("witness_sigma_stable", samples)
        for a in self._elements(samples, max_terms=2):
            member = ideal.generator * a
            if try_divide(W.sigma.apply(member), ideal.generator) is None:
                result.failures += 1
                result.witness = result.witness or format_element(member)
        return result

    def run(self, steps: Sequence[str] = ALL_STEPS) -> Report:
        self.logger.log("scenario_start", {"family": self.family.name.value, "seed": self.config.seed,
                                           "steps": list(steps)})
        wanted = set(steps) | {"algebra"}
        for name in ALL_STEPS:
            if name not in wanted:
                continue
            started = time.perf_counter()
            getattr(self, f"step_{name}")()
            elapsed = time.perf_counter() - started
            self.report.timing[name] = elapsed
            self.logger.log("scenario_step", {"step": name, "seconds": round(elapsed, 4)})
        self.logger.log("scenario_result", {
            "family": self.family.name.value,
            "exit_code": self.report.exit_code,
            "violations": len(self.report.contract_violations),
        })
        return self.report


def run_scenario(config: ScenarioConfig, steps: Sequence[str] = ALL_STEPS) -> Report:
    return ScenarioRun(config).run(steps)
