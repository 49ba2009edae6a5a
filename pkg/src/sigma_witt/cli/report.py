"""Text and JSON rendering of command results."""
import json
from typing import Any, Dict, List


def render_json(data: Dict[str, Any]) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def _lines(value: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        out = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                out.append(f"{pad}{key}:")
                out.extend(_lines(item, indent + 1))
            else:
                out.append(f"{pad}{key}: {_scalar(item)}")
        return out
    if isinstance(value, list):
        out = []
        for item in value:
            if isinstance(item, (dict, list)) and item:
                out.append(f"{pad}-")
                out.extend(_lines(item, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(item)}")
        return out
    return [f"{pad}{_scalar(value)}"]


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (dict, list)):
        return "[]" if isinstance(value, list) else "{}"
    return str(value)


def render_text(data: Dict[str, Any]) -> str:
    return "\n".join(_lines(data))


def render_scenario_text(report: Dict[str, Any]) -> str:
    config = report["config"]
    family = config["family"]
    out = [
        f"sigma-witt scenario: {family['name']} {family['params']} seed={config['seed']}",
        "=" * 60,
        f"ring:  {family['ring']}",
    ]
    algebra = report.get("algebra") or {}
    if algebra:
        out.append(f"g:     {algebra['g']}  ({algebra['provenance']})")
        out.append(f"delta: {algebra['delta']}")
    out.append("")
    out.append("checks")
    out.append("-" * 40)
    for check in report["checks"]:
        mark = "✅" if check["all_zero"] else ("❌" if check["mandatory"] else "ℹ️ ")
        line = f"{mark} {check['name']}: {check['samples'] - check['failures']}/{check['samples']} zero"
        if check["witness"]:
            line += f"  witness: {check['witness']}"
        out.append(line)
    if report.get("hypotheses"):
        out.append("")
        out.append("hypotheses")
        out.append("-" * 40)
        for key, value in report["hypotheses"].items():
            if isinstance(value, dict) and "answer" in value:
                witness = f" (witness {value['witness']})" if value.get("witness") else ""
                out.append(f"{key}: {value['answer']}{witness}")
            else:
                out.append(f"{key}: {_scalar(value) if not isinstance(value, dict) else value}")
    verdict = (report.get("verdicts") or {}).get("simplicity")
    if verdict:
        out.append("")
        out.append(f"verdict: {verdict['verdict']}" + (f"  witness {verdict['witness']}" if verdict["witness"] else ""))
        for flag in verdict["hypothesis_report"].get("flags", []):
            out.append(f"  flag: {flag}")
        hom = verdict.get("hom_lie") or {}
        if hom:
            out.append(f"  hom-lie: {'yes' if hom.get('is_hom_lie') else 'no'}")
    for note in report.get("notes", []):
        out.append(f"note: {note}")
    out.append("")
    if report["contract_violations"]:
        out.append("🔴 contract violations:")
        out.extend(f"  - {v}" for v in report["contract_violations"])
    else:
        out.append("✅ all contracts satisfied")
    return "\n".join(out)
