import json

import pytest

from sigma_witt.core.config import (
    ScenarioConfig,
    Windows,
    build_scenario_config,
    load_document,
    load_families_config,
    load_settings,
)
from sigma_witt.core.errors import ConfigError, NotDivisible, SigmaWittError
from sigma_witt.core.logging import JsonlLogger, configure_logger, get_logger


def test_shipped_settings_load():
    settings = load_settings()
    assert settings["windows"]["gcd_window"] == 12
    assert settings["scenario"]["family"] == "qwitt_poly"
    assert "power_twist" in load_families_config()


def test_windows_validation():
    assert Windows().multiplier_window == 10
    with pytest.raises(ConfigError):
        Windows(gcd_window=0)
    with pytest.raises(ConfigError):
        Windows.from_mapping({"window": 3})
    with pytest.raises(ConfigError):
        Windows.from_mapping({"gcd_window": "many"})
    assert Windows.from_mapping({"gcd_window": "7"}).gcd_window == 7


def test_negative_seed_rejected():
    with pytest.raises(ConfigError):
        build_scenario_config(family="qwitt_poly", seed=-1)
    with pytest.raises(ConfigError):
        build_scenario_config(family="qwitt_poly", output="xml")


def test_precedence_flags_over_document_over_presets():
    document = {
        "family": {"name": "power_twist", "s": -2},
        "seed": 7,
        "windows": {"multiplier_window": 8, "gcd_window": 9},
    }
    config = build_scenario_config(document=document)
    assert config.family.integer("s") == -2
    assert config.seed == 7
    assert config.windows.multiplier_window == 8
    assert config.windows.oracle_samples == 20

    config = build_scenario_config(document=document, params={"s": "5"}, seed=3, windows={"gcd_window": 4})
    assert config.family.integer("s") == 5
    assert config.seed == 3
    assert config.windows.gcd_window == 4
    assert config.windows.multiplier_window == 8


def test_document_g_and_params_block():
    config = build_scenario_config(document={"family": "qwitt_poly", "params": {"q": "2"}, "g": "t"})
    assert dict(config.family.params)["g"] == "t"
    assert dict(config.family.params)["q"] == "2"


def test_load_document_yaml_and_json(tmp_path):
    yaml_path = tmp_path / "scenario.yaml"
    yaml_path.write_text("family: qwitt_laurent\nseed: 11\n")
    assert load_document(yaml_path) == {"family": "qwitt_laurent", "seed": 11}

    json_path = tmp_path / "scenario.json"
    json_path.write_text(json.dumps({"family": {"name": "multi_laurent", "n": 3}}))
    assert build_scenario_config(document=load_document(json_path)).family.integer("n") == 3

    with pytest.raises(ConfigError):
        load_document(tmp_path / "missing.yaml")
    bad = tmp_path / "list.yaml"
    bad.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        load_document(bad)


def test_config_to_dict_has_no_timing():
    data = build_scenario_config(family="qwitt_poly").to_dict()
    assert set(data) == {"family", "seed", "windows", "sampling", "output"}
    assert isinstance(build_scenario_config(family="qwitt_poly"), ScenarioConfig)


def test_error_context_round_trip():
    err = NotDivisible("does not divide", a="t", b="t^2")
    assert isinstance(err, SigmaWittError)
    assert str(err) == "does not divide (a=t, b=t^2)"
    assert err.to_dict() == {"error": "NotDivisible", "message": "does not divide",
                             "context": {"a": "t", "b": "t^2"}}


def test_jsonl_logger_writes_one_record_per_line(tmp_path):
    path = tmp_path / "logs" / "run.jsonl"
    logger = JsonlLogger(str(path), echo_errors=False)
    logger.log("scenario_start", {"family": "qwitt_poly"})
    logger.warn("careful", event="usage_error", error={"message": "x"})
    records = [json.loads(line) for line in path.read_text().splitlines()]
    assert [r["event"] for r in records] == ["scenario_start", "usage_error"]
    assert records[1]["level"] == "WARN"
    assert records[1]["data"]["message"] == "careful"
    assert len(logger.recent("scenario_start")) == 1


def test_configure_logger_replaces_singleton():
    logger = configure_logger(None, echo_errors=False)
    assert get_logger() is logger
    logger.error("boom", event="contract_error")
    assert logger.recent("contract_error")[0]["data"]["message"] == "boom"
