import pytest

from sigma_witt.algebra.endo import Answer
from sigma_witt.algebra.ideals import HOM_LIE_NOTE
from sigma_witt.cli.report import render_json, render_scenario_text
from sigma_witt.core.config import build_scenario_config
from sigma_witt.core.logging import get_logger
from sigma_witt.orchestrator import AXIOM_STEPS, run_scenario

FAST = {
    "gcd_window": 8,
    "multiplier_window": 4,
    "dependence_bound": 3,
    "jacobi_samples": 8,
    "oracle_samples": 5,
    "vandermonde_samples": 5,
    "saturation_window": 3,
}


def _config(family, seed=0, **params):
    return build_scenario_config(family=family, params=params, seed=seed, windows=FAST)


@pytest.mark.parametrize("family,params,verdict", [
    ("qwitt_poly", {}, "Simple"),
    ("qwitt_poly", {"q": "zeta(5)"}, "NotSimple"),
    ("qwitt_laurent", {}, "Simple"),
    ("power_twist", {"s": "3"}, "NotSimple"),
    ("multi_laurent", {}, "Simple"),
    ("multi_laurent", {"q1": "q", "q2": "q"}, "NotSimple"),
])
def test_scenario_verdicts(family, params, verdict):
    report = run_scenario(_config(family, **params))
    data = report.to_dict()
    assert report.exit_code == 0, data["contract_violations"]
    assert data["verdicts"]["simplicity"]["verdict"] == verdict
    names = [c["name"] for c in data["checks"]]
    for name in ("leibniz", "twist", "skew_symmetry", "bilinearity", "generalized_jacobi",
                 "hom_jacobi", "partial_of_one", "oracle_agreement"):
        assert name in names


def test_jackson_check_only_for_preset_g():
    data = run_scenario(_config("qwitt_poly")).to_dict()
    jackson = [c for c in data["checks"] if c["name"] == "jackson_derivative"]
    assert jackson and jackson[0]["all_zero"]
    assert jackson[0]["samples"] == 50


def test_power_twist_hom_jacobi_is_mandatory_and_vanishes():
    data = run_scenario(_config("power_twist", s="3")).to_dict()
    checks = {c["name"]: c for c in data["checks"]}
    for name in ("hom_jacobi", "cyclic_sigma_sum", "hom_jacobi_monomial_search"):
        assert checks[name]["mandatory"] is True
        assert checks[name]["failures"] == 0
    assert checks["hom_jacobi_monomial_search"]["samples"] == 35
    assert HOM_LIE_NOTE in data["notes"]
    assert data["verdicts"]["simplicity"]["hom_lie"]["is_hom_lie"] is True
    assert data["algebra"]["delta"] == "1 + q*t^2 + q^2*t^4"
    assert data["exit_code"] == 0


def test_hypotheses_section():
    data = run_scenario(_config("qwitt_laurent")).to_dict()
    hypotheses = data["hypotheses"]
    assert hypotheses["epimorphism"]["answer"] == Answer.YES.value
    assert hypotheses["partial_surjective"]["answer"] == Answer.NO.value
    assert hypotheses["delta_in_F"] is True
    assert hypotheses["generator_preimages"] == {"t": "1/q*t"}


def test_axiom_steps_skip_verdict():
    report = run_scenario(_config("qwitt_laurent"), AXIOM_STEPS)
    data = report.to_dict()
    assert data["verdicts"]["simplicity"] is None
    assert data["hypotheses"] == {}
    assert report.exit_code == 0


def test_custom_family_gets_note_instead_of_verdict():
    config = build_scenario_config(family="custom", params={"variables": "t", "sigma": "t -> 2*t"}, windows=FAST)
    data = run_scenario(config).to_dict()
    assert data["verdicts"]["simplicity"] is None
    assert data["notes"] == ["simplicity is only decided for the preset families"]
    assert data["exit_code"] == 0


def test_json_report_is_deterministic():
    first = render_json(run_scenario(_config("power_twist", seed=5, s="-1")).to_dict())
    second = render_json(run_scenario(_config("power_twist", seed=5, s="-1")).to_dict())
    assert first == second
    assert "seconds" not in first
    assert "timing" not in first


def test_seed_changes_samples_not_verdict():
    a = run_scenario(_config("qwitt_poly", seed=1)).to_dict()
    b = run_scenario(_config("qwitt_poly", seed=2)).to_dict()
    assert a["verdicts"]["simplicity"]["verdict"] == b["verdicts"]["simplicity"]["verdict"]
    assert a["config"]["seed"] != b["config"]["seed"]


def test_steps_are_logged_with_timings():
    run_scenario(_config("qwitt_poly"), AXIOM_STEPS)
    steps = [r["data"]["step"] for r in get_logger().recent("scenario_step")]
    assert steps == list(AXIOM_STEPS)
    assert get_logger().recent("scenario_result")[-1]["data"]["exit_code"] == 0


def test_text_rendering():
    text = render_scenario_text(run_scenario(_config("qwitt_poly", q="zeta(3)")).to_dict())
    assert "verdict: NotSimple  witness (t^3)" in text
    assert "all contracts satisfied" in text
