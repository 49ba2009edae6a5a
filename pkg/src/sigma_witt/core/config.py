"""YAML/JSON configuration loader and scenario configuration"""
import os
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

from .errors import ConfigError

PROJECT_ROOT = Path(__file__).resolve().parents[3]
CONFIG_DIR = PROJECT_ROOT / "config"

DEFAULT_SETTINGS: Dict[str, Any] = {
    "system": {"log_path": "./logs/sigma_witt.jsonl"},
    "scenario": {"family": "qwitt_poly", "seed": 0, "output": "text"},
    "windows": {
        "gcd_window": 12,
        "multiplier_window": 10,
        "dependence_bound": 8,
        "jacobi_samples": 100,
        "oracle_samples": 20,
        "vandermonde_samples": 20,
        "saturation_window": 6,
        "hom_jacobi_bound": 3,
    },
    "sampling": {"max_terms": 4, "max_degree": 8, "coeff_bound": 5},
}


def _merge(base: Mapping[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_document(path: os.PathLike) -> Dict[str, Any]:
    """Load a YAML or JSON mapping (YAML parses JSON documents as well)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = yaml.safe_load(fh)
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {path}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"config file is not valid YAML/JSON: {e}", path=path) from e
    if doc is None:
        return {}
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a mapping", path=path)
    return doc


@lru_cache(maxsize=8)
def _load_settings_cached(path: str) -> Dict[str, Any]:
    if not os.path.exists(path):
        return dict(DEFAULT_SETTINGS)
    return _merge(DEFAULT_SETTINGS, load_document(path))


def load_settings(path: Optional[str] = None) -> Dict[str, Any]:
    path = path or os.environ.get("SIGMA_WITT_SETTINGS") or str(CONFIG_DIR / "settings.yaml")
    return _load_settings_cached(path)


@lru_cache(maxsize=8)
def _load_families_cached(path: str) -> Dict[str, Any]:
    if not os.path.exists(path):
        return {}
    return load_document(path)


def load_families_config(path: Optional[str] = None) -> Dict[str, Any]:
    return _load_families_cached(path or str(CONFIG_DIR / "families.yaml"))


@dataclass(frozen=True)
class Windows:
    gcd_window: int = 12
    multiplier_window: int = 10
    dependence_bound: int = 8
    jacobi_samples: int = 100
    oracle_samples: int = 20
    vandermonde_samples: int = 20
    saturation_window: int = 6
    hom_jacobi_bound: int = 3

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise ConfigError(f"window '{f.name}' must be a positive integer", value=value)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "Windows":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown window keys: {sorted(unknown)}")
        return cls(**{k: _as_int(k, v) for k, v in data.items()})

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


@dataclass(frozen=True)
class Sampling:
    max_terms: int = 4
    max_degree: int = 8
    coeff_bound: int = 5

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ConfigError(f"sampling '{f.name}' must be positive")

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "Sampling":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown sampling keys: {sorted(unknown)}")
        return cls(**{k: _as_int(k, v) for k, v in data.items()})

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


def _as_int(name: str, value: Any) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"'{name}' must be an integer", value=value)
    try:
        return int(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"'{name}' must be an integer", value=value) from e


OUTPUT_FORMATS = ("text", "json")


@dataclass(frozen=True)
class ScenarioConfig:
    family: Any  # sigma_witt.families.FamilyDescriptor
    seed: int = 0
    windows: Windows = field(default_factory=Windows)
    sampling: Sampling = field(default_factory=Sampling)
    output: str = "text"

    def __post_init__(self):
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError("seed must be an unsigned integer", seed=self.seed)
        if self.output not in OUTPUT_FORMATS:
            raise ConfigError(f"output must be one of {OUTPUT_FORMATS}", output=self.output)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family.to_dict(),
            "seed": self.seed,
            "windows": self.windows.to_dict(),
            "sampling": self.sampling.to_dict(),
            "output": self.output,
        }


def build_scenario_config(
    document: Optional[Mapping[str, Any]] = None,
    family: Optional[str] = None,
    params: Optional[Mapping[str, Any]] = None,
    seed: Optional[int] = None,
    output: Optional[str] = None,
    windows: Optional[Mapping[str, Any]] = None,
    g: Optional[str] = None,
    settings: Optional[Mapping[str, Any]] = None,
) -> ScenarioConfig:
    """Merge settings.yaml < families.yaml < config document < explicit flags."""
    from ..families import build_family

    settings = settings or load_settings()
    document = dict(document or {})
    scenario_defaults = settings.get("scenario", {})

    family_doc = document.get("family", scenario_defaults.get("family", "qwitt_poly"))
    doc_params: Dict[str, Any] = {}
    if isinstance(family_doc, Mapping):
        doc_params = {k: v for k, v in family_doc.items() if k != "name"}
        family_doc = family_doc.get("name")
    doc_params.update(document.get("params", {}) or {})
    name = family or family_doc
    if not name:
        raise ConfigError("no family given")

    preset_defaults = load_families_config().get(name, {}).get("params", {}) or {}
    merged_params: Dict[str, Any] = dict(preset_defaults)
    merged_params.update(doc_params)
    merged_params.update(params or {})
    if g is not None:
        merged_params["g"] = g
    elif document.get("g") is not None:
        merged_params["g"] = document["g"]

    window_values = _merge(settings.get("windows", {}), document.get("windows", {}) or {})
    window_values = _merge(window_values, windows or {})
    sampling_values = _merge(settings.get("sampling", {}), document.get("sampling", {}) or {})

    seed_value = seed if seed is not None else document.get("seed", scenario_defaults.get("seed", 0))
    output_value = output or document.get("output") or scenario_defaults.get("output", "text")

    return ScenarioConfig(
        family=build_family(name, merged_params),
        seed=_as_int("seed", seed_value),
        windows=Windows.from_mapping(window_values),
        sampling=Sampling.from_mapping(sampling_values),
        output=output_value,
    )
