"""Command-line runner for sigma-witt: one subcommand per algebra operation"""
import argparse
import os
import sys
from typing import Any, Dict, List, Optional

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from dotenv import load_dotenv

load_dotenv()

from sigma_witt.algebra.deform import bracket, partial
from sigma_witt.algebra.ideals import (
    PrincipalIdeal,
    bracket_ideal_saturates,
    brute_force_stability,
    decide_simplicity,
    extract_monomials,
    is_partial_stable,
    verify_extraction,
)
from sigma_witt.cli.expressions import format_element, parse_element
from sigma_witt.cli.report import render_json, render_scenario_text, render_text
from sigma_witt.core.config import ScenarioConfig, build_scenario_config, load_document
from sigma_witt.core.errors import SigmaWittError, UsageError
from sigma_witt.core.logging import get_logger
from sigma_witt.orchestrator import AXIOM_STEPS, run_scenario

EXIT_OK = 0
EXIT_CONTRACT = 1
EXIT_USAGE = 2

WINDOW_FLAGS = {
    "gcd_window": "--gcd-window",
    "multiplier_window": "--multiplier-window",
    "dependence_bound": "--dependence-bound",
    "jacobi_samples": "--samples",
    "oracle_samples": "--oracle-samples",
    "vandermonde_samples": "--vandermonde-samples",
    "saturation_window": "--window",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", help="qwitt_poly, qwitt_laurent, power_twist, multi_laurent or custom")
    parser.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                        help="family parameter, repeatable (e.g. q=zeta(5), s=3)")
    parser.add_argument("--g", help="explicit g (must be an associate of the computed gcd)")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    parser.add_argument("--config", help="YAML or JSON scenario document")
    for key, flag in WINDOW_FLAGS.items():
        parser.add_argument(flag, dest=key, type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sigma-witt", description="Exact sigma-deformed Witt algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("scenario", help="full pipeline: residuals, hypotheses and verdict"))
    _common(sub.add_parser("check-axioms", help="residual suites only"))
    p = sub.add_parser("bracket", help="evaluate [a, b]")
    _common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = sub.add_parser("partial", help="evaluate partial(a)")
    _common(p)
    p.add_argument("--a", required=True)
    p = sub.add_parser("ideal-stable", help="decide partial-stability of a principal ideal")
    _common(p)
    p.add_argument("--gen", required=True)
    p = sub.add_parser("extract-monomials", help="Vandermonde extraction of the terms of p")
    _common(p)
    p.add_argument("--p", required=True)
    _common(sub.add_parser("simplicity", help="certified simplicity verdict"))
    p = sub.add_parser("saturate", help="bracket-ideal saturation probe")
    _common(p)
    p.add_argument("--gen", action="append", required=True)
    return parser


def _params(pairs: List[str]) -> Dict[str, str]:
    params = {}
    for pair in pairs:
        if "=" not in pair:
            raise UsageError(f"--param expects KEY=VALUE, got '{pair}'")
        key, value = pair.split("=", 1)
        params[key.strip()] = value.strip()
    return params


def _config(args: argparse.Namespace) -> ScenarioConfig:
    document = load_document(args.config) if args.config else None
    windows = {k: getattr(args, k) for k in WINDOW_FLAGS if getattr(args, k, None) is not None}
    return build_scenario_config(
        document=document,
        family=args.family,
        params=_params(args.param),
        seed=args.seed,
        output="json" if args.json else None,
        windows=windows,
        g=args.g,
    )


def _emit(data: Dict[str, Any], config: ScenarioConfig, text: Optional[str] = None) -> None:
    if config.output == "json":
        print(render_json(data))
    else:
        print(text if text is not None else render_text(data))


def _dispatch(args: argparse.Namespace) -> int:
    config = _config(args)
    family = config.family
    command = args.command

    if command in ("scenario", "check-axioms"):
        report = run_scenario(config) if command == "scenario" else run_scenario(config, AXIOM_STEPS)
        data = report.to_dict()
        _emit(data, config, render_scenario_text(data))
        return report.exit_code

    if command == "simplicity":
        verdict = decide_simplicity(family, config.windows, config.seed)
        data = verdict.to_dict()
        _emit(data, config)
        rejected = any(e.get("kind") == "witness_rejected" for e in verdict.evidence)
        return EXIT_CONTRACT if rejected else EXIT_OK

    W = family.build_algebra(config.windows.gcd_window)
    ring = W.ring
    if command == "bracket":
        a, b = parse_element(args.a, ring), parse_element(args.b, ring)
        _emit({"a": format_element(a), "b": format_element(b), "bracket": format_element(bracket(W, a, b))}, config)
        return EXIT_OK
    if command == "partial":
        a = parse_element(args.a, ring)
        _emit({"a": format_element(a), "partial": format_element(partial(W, a))}, config)
        return EXIT_OK
    if command == "ideal-stable":
        ideal = PrincipalIdeal(parse_element(args.gen, ring))
        certificate = is_partial_stable(W, ideal)
        oracle = brute_force_stability(W, ideal, config.windows.multiplier_window)
        agree = certificate.stable == oracle.stable
        _emit({"ideal": str(ideal), "proper": ideal.is_proper, "certificate": certificate.to_dict(),
               "oracle": oracle.to_dict(), "agree": agree}, config)
        return EXIT_OK if agree else EXIT_CONTRACT
    if command == "extract-monomials":
        p = parse_element(args.p, ring)
        extracted = extract_monomials(W, p)
        verified = verify_extraction(W, p, extracted)
        _emit({"p": format_element(p), "terms": [item.to_dict() for item in extracted],
               "reconstructed": verified}, config)
        return EXIT_OK if verified else EXIT_CONTRACT
    if command == "saturate":
        generators = [parse_element(text, ring) for text in args.gen]
        result = bracket_ideal_saturates(W, generators, config.windows.saturation_window)
        _emit(dict(result.to_dict(), generators=[format_element(g) for g in generators]), config)
        return EXIT_OK
    raise UsageError(f"unknown command {command}")


def main(argv: Optional[List[str]] = None) -> int:
    logger = get_logger()
    args = build_parser().parse_args(argv)
    logger.log("runner_start", {"command": args.command, "pid": os.getpid()})
    try:
        code = _dispatch(args)
    except UsageError as e:
        logger.warn(str(e), event="usage_error", error=e.to_dict())
        print(render_json(e.to_dict()) if args.json else f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SigmaWittError as e:
        logger.error(str(e), event="contract_error", error=e.to_dict())
        print(render_json(e.to_dict()) if args.json else f"error: {e}", file=sys.stderr)
        return EXIT_CONTRACT
    logger.log("runner_result", {"command": args.command, "exit_code": code})
    return code


if __name__ == "__main__":
    sys.exit(main())
