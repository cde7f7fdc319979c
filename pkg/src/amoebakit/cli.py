"""Command-line front end.

Subcommands mirror the pipeline modes; every flag overrides the matching
scenario field.  Exit codes: 0 when all requested verdicts pass, 2 on a
verdict failure, 1 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import AmoebakitError
from .pipeline import MODES, PipelineResult, ScenarioError, run_scenario


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument("--input", required=True, help="scenario JSON file")
    sub.add_argument("--out", required=True, help="output directory")
    sub.add_argument("--resolution", type=int, help="grid cells per axis")
    sub.add_argument("--angles", type=int, help="torus angle samples per sweep line")
    sub.add_argument("--quad", type=int, help="Ronkin quadrature nodes per axis")
    sub.add_argument("--seed", type=int, help="base random seed")
    sub.add_argument("--epsilon-list", type=str,
                     help="comma-separated neighborhood radii for the retraction table")
    sub.add_argument("--degenerate-mode", action="store_true", default=None,
                     help="relax interior checks for measure-zero amoebas")
    sub.add_argument("--workers", type=int, default=1,
                     help="worker threads for raster sweeps (output independent)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amoebakit",
        description="Amoebas of bivariate Laurent polynomials and their intersections")
    subs = parser.add_subparsers(dest="command", required=True)
    for mode in MODES:
        sub = subs.add_parser(mode, help=f"run the {mode} pipeline")
        _add_common(sub)
    return parser


def _load_scenario(path: str) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"malformed JSON in {path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = _load_scenario(args.input)
        scenario["mode"] = args.command
        if args.resolution is not None:
            scenario["resolution"] = args.resolution
        if args.angles is not None:
            scenario["angle_samples"] = args.angles
        if args.quad is not None:
            scenario["quad_n"] = args.quad
        if args.seed is not None:
            scenario["seed"] = args.seed
        if args.epsilon_list is not None:
            scenario["epsilon_list"] = [float(e) for e in args.epsilon_list.split(",")]
        if args.degenerate_mode is not None:
            scenario["degenerate_mode"] = args.degenerate_mode
        result: PipelineResult = run_scenario(scenario, workers=args.workers)
    except (ScenarioError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AmoebakitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(result.report_json(), encoding="utf-8")
    (out / "figure.svg").write_text(result.svg, encoding="utf-8")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
