"""Preset families and the custom family, built from string parameters.

q-specs: ``symbolic`` (a fresh parameter named after the slot), a rational literal, an
expression in parameter names, or an expression in ``zeta(m)``. Cyclotomic values and
parameters cannot be mixed within one family.
"""
import re
from dataclasses import dataclass
from enum import Enum
from math import lcm
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra.coeff import Coefficient, FieldDescriptor
from .algebra.deform import DeformedWittAlgebra, make_algebra
from .algebra.endo import Endomorphism
from .algebra.ring import RingDescriptor, RingElement
from .cli.expressions import format_element, parse_constant, parse_element, parse_endomorphism
from .core.errors import ConfigError, UnsupportedFamily
from .core.logging import get_logger


class FamilyName(str, Enum):
    QWITT_POLY = "qwitt_poly"
    QWITT_LAURENT = "qwitt_laurent"
    POWER_TWIST = "power_twist"
    MULTI_LAURENT = "multi_laurent"
    CUSTOM = "custom"


ALLOWED_PARAMS = {
    FamilyName.QWITT_POLY: {"q", "g"},
    FamilyName.QWITT_LAURENT: {"q", "k", "g"},
    FamilyName.POWER_TWIST: {"q", "s", "g"},
    FamilyName.CUSTOM: {"variables", "laurent", "sigma", "g", "parameters"},
}

_ZETA = re.compile(r"zeta\s*\(\s*(\d+)\s*\)")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


@dataclass(frozen=True)
class FamilyDescriptor:
    name: FamilyName
    ring: RingDescriptor
    sigma: Endomorphism
    g_override: Optional[RingElement]
    q_values: Tuple[Coefficient, ...]
    integers: Tuple[Tuple[str, int], ...]
    params: Tuple[Tuple[str, str], ...]

    @property
    def q(self) -> Coefficient:
        return self.q_values[0]

    def integer(self, key: str) -> int:
        return dict(self.integers)[key]

    def build_algebra(self, window: int = 12) -> DeformedWittAlgebra:
        return make_algebra(self.ring, self.sigma, self.g_override, window)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name.value,
            "params": dict(self.params),
            "ring": str(self.ring),
            "sigma": self.sigma.to_dict(),
            "g_override": format_element(self.g_override) if self.g_override is not None else None,
        }


def resolve_field(specs: Sequence[Tuple[str, str]], reserved: Sequence[str] = ()) -> FieldDescriptor:
    """Smallest field holding every q-spec."""
    parameters: List[str] = []
    orders: List[int] = []
    for slot, spec in specs:
        spec = spec.strip()
        if spec == "symbolic":
            names = [slot]
        else:
            orders.extend(int(m) for m in _ZETA.findall(spec))
            names = _NAME.findall(_ZETA.sub(" ", spec))
        for name in names:
            if name in ("zeta", "symbolic"):
                raise ConfigError(f"'{name}' cannot be used as a parameter name", slot=slot)
            if name in reserved:
                raise ConfigError(f"parameter '{name}' clashes with a ring variable", slot=slot)
            if name not in parameters:
                parameters.append(name)
    if orders and parameters:
        raise ConfigError("roots of unity cannot be mixed with symbolic parameters", parameters=parameters)
    if any(m < 1 for m in orders):
        raise ConfigError("zeta(m) needs m >= 1")
    if orders:
        return FieldDescriptor.cyclotomic(lcm(*orders))
    if parameters:
        return FieldDescriptor.rational_functions(*parameters)
    return FieldDescriptor.rationals()


def _ring(field: FieldDescriptor, variables: Sequence[str], laurent: Sequence[bool]) -> RingDescriptor:
    try:
        return RingDescriptor(field, tuple(variables), tuple(laurent))
    except ValueError as err:
        raise ConfigError(str(err)) from err


def _int_param(params: Mapping[str, str], key: str, default: int) -> int:
    raw = params.get(key, default)
    try:
        return int(raw)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"parameter '{key}' must be an integer", value=raw) from err


def _q_value(ring: RingDescriptor, slot: str, spec: str) -> Coefficient:
    text = slot if spec.strip() == "symbolic" else spec
    value = parse_constant(text, ring)
    if not value:
        raise ConfigError(f"parameter '{slot}' must be nonzero")
    return value


def _check_params(name: FamilyName, params: Mapping[str, str], allowed) -> None:
    unknown = sorted(set(params) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown parameters for {name.value}: {unknown}")


def _split_list(raw: Any) -> List[str]:
    if isinstance(raw, (list, tuple)):
        return [str(x).strip() for x in raw]
    return [x.strip() for x in str(raw).split(",") if x.strip()]


def build_family(name: str, params: Optional[Mapping[str, Any]] = None) -> FamilyDescriptor:
    try:
        family = FamilyName(name)
    except ValueError as err:
        known = ", ".join(f.value for f in FamilyName)
        raise UnsupportedFamily(f"unknown family '{name}' (known: {known})") from err
    raw: Dict[str, Any] = dict(params or {})
    text = {k: v if isinstance(v, (list, tuple)) else str(v) for k, v in raw.items() if v is not None}

    if family is FamilyName.CUSTOM:
        descriptor = _build_custom(text)
    elif family is FamilyName.MULTI_LAURENT:
        descriptor = _build_multi_laurent(text)
    else:
        descriptor = _build_univariate(family, text)

    if descriptor.sigma.is_identity:
        raise ConfigError("sigma is the identity map for these parameters", family=family.value)
    get_logger().log("family_built", {"family": family.value, "params": dict(descriptor.params),
                                      "ring": str(descriptor.ring)})
    return descriptor


def _g_override(params: Mapping[str, str], ring: RingDescriptor) -> Optional[RingElement]:
    g = params.get("g")
    if g is None or str(g).strip() in ("", "auto"):
        return None
    return parse_element(str(g), ring)


def _build_univariate(family: FamilyName, params: Dict[str, str]) -> FamilyDescriptor:
    _check_params(family, params, ALLOWED_PARAMS[family])
    q_spec = params.setdefault("q", "symbolic")
    field = resolve_field([("q", q_spec)], reserved=("t",))
    laurent = family is not FamilyName.QWITT_POLY
    ring = _ring(field, ("t",), (laurent,))
    q = _q_value(ring, "q", q_spec)
    coefficients = ring.coefficients
    integers: Tuple[Tuple[str, int], ...] = ()

    if family is FamilyName.QWITT_POLY:
        sigma = Endomorphism.diagonal(ring, (q,))
        default_g = ring.variable("t").scale(coefficients.one - q)
    elif family is FamilyName.QWITT_LAURENT:
        k = _int_param(params, "k", 1)
        params["k"] = str(k)
        integers = (("k", k),)
        sigma = Endomorphism.diagonal(ring, (q,))
        default_g = ring.monomial((k,))
    else:
        s = _int_param(params, "s", 3)
        if s in (0, 1, 2):
            raise ConfigError("power_twist needs s not in {0, 1, 2}", s=s)
        params["s"] = str(s)
        integers = (("s", s),)
        sigma = Endomorphism(ring, (q,), ((s,),))
        if s > 2:
            default_g = ring.one() - ring.monomial((s - 1,), q)
        else:
            default_g = ring.one() - ring.monomial((1 - s,), coefficients.inverse(q))

    g = _g_override(params, ring)
    return FamilyDescriptor(family, ring, sigma, default_g if g is None else g, (q,), integers,
                            tuple(sorted(params.items())))


def _build_multi_laurent(params: Dict[str, str]) -> FamilyDescriptor:
    n = _int_param(params, "n", 2)
    if n < 1:
        raise ConfigError("multi_laurent needs n >= 1", n=n)
    params["n"] = str(n)
    slots = [f"q{i}" for i in range(1, n + 1)]
    _check_params(FamilyName.MULTI_LAURENT, params, set(slots) | {"n", "g"})
    variables = [f"x{i}" for i in range(1, n + 1)]
    for slot in slots:
        params.setdefault(slot, "symbolic")
    field = resolve_field([(slot, params[slot]) for slot in slots], reserved=variables)
    ring = _ring(field, variables, (True,) * n)
    qs = tuple(_q_value(ring, slot, params[slot]) for slot in slots)
    sigma = Endomorphism.diagonal(ring, qs)
    g = _g_override(params, ring)
    return FamilyDescriptor(FamilyName.MULTI_LAURENT, ring, sigma, ring.one() if g is None else g, qs,
                            (("n", n),), tuple(sorted(params.items())))


def _build_custom(params: Dict[str, Any]) -> FamilyDescriptor:
    _check_params(FamilyName.CUSTOM, params, ALLOWED_PARAMS[FamilyName.CUSTOM])
    if "variables" not in params or "sigma" not in params:
        raise ConfigError("the custom family needs 'variables' and 'sigma'")
    variables = _split_list(params["variables"])
    laurent_raw = params.get("laurent", "false")
    laurent_items = _split_list(laurent_raw)
    if [x.lower() for x in laurent_items] in (["true"], ["all"]):
        laurent = [True] * len(variables)
    elif [x.lower() for x in laurent_items] in (["false"], ["none"], []):
        laurent = [False] * len(variables)
    else:
        unknown = set(laurent_items) - set(variables)
        if unknown:
            raise ConfigError(f"laurent lists unknown variables: {sorted(unknown)}")
        laurent = [v in laurent_items for v in variables]

    sigma_text = str(params["sigma"])
    g_text = str(params.get("g", ""))
    body = re.sub(r"[A-Za-z_][A-Za-z_0-9]*\s*->", " ", sigma_text) + " " + g_text
    if "parameters" in params:
        names = _split_list(params["parameters"])
    else:
        names = [n for n in _NAME.findall(_ZETA.sub(" ", body)) if n not in variables and n != "auto"]
    specs = [(n, "symbolic") for n in names]
    specs += [("sigma", f"zeta({m})") for m in _ZETA.findall(body)]
    field = resolve_field(specs, reserved=variables)
    ring = _ring(field, variables, laurent)
    sigma = parse_endomorphism(sigma_text, ring)
    flat = {k: ",".join(v) if isinstance(v, (list, tuple)) else v for k, v in params.items()}
    return FamilyDescriptor(FamilyName.CUSTOM, ring, sigma, _g_override(params, ring), tuple(sigma.scalars),
                            (), tuple(sorted(flat.items())))
