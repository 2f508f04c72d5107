import argparse
import os
import sys

# Add the project root to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cli import report as report_io
from cli.analysis import analyze
from cli.inputs import parse_input
from cli.scenarios import SCENARIO_ALIASES, SCENARIOS, require_pass, run_scenarios
from cli.sweep import PREDICATES, SweepSpec, parse_range, sweep
from cli.sweep import dumps as dump_sweep
from utils.config import DESCENT_STARTS, WORKERS
from utils.errors import GoldenMismatchError, ValidationError
from utils.logging import logger


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lcwlab", description="Exact LCW analysis of metric Lie algebras and Euclidean conformal Killing fields."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze_cmd = sub.add_parser("analyze", help="Analyze a lie_algebra or ckf JSON document")
    analyze_cmd.add_argument("file")
    analyze_cmd.add_argument("--json", dest="json_out", help="Also write the report as JSON to this path")
    analyze_cmd.add_argument("--format", choices=("text", "json"), default="text", help="Format printed on stdout")
    analyze_cmd.add_argument("--skip-jacobi", action="store_true", help="Keep algebras failing the Jacobi identity")
    analyze_cmd.add_argument("--workers", type=int, default=WORKERS)
    analyze_cmd.add_argument("--starts", type=int, default=DESCENT_STARTS, help="Descent starts for 4D flag search")

    ckf_cmd = sub.add_parser("classify-ckf", help="Classify a conformal Killing field document")
    ckf_cmd.add_argument("file")
    ckf_cmd.add_argument("--format", choices=("text", "json"), default="text")

    scenario_cmd = sub.add_parser("scenario", help="Run a built-in scenario against its goldens")
    scenario_cmd.add_argument("name", choices=SCENARIOS + tuple(SCENARIO_ALIASES) + ("all",))
    scenario_cmd.add_argument("--format", choices=("text", "json"), default="text")
    scenario_cmd.add_argument("--workers", type=int, default=WORKERS)

    sweep_cmd = sub.add_parser("sweep", help="Sweep diagonal unimodular 3D algebras")
    sweep_cmd.add_argument("--l1", required=True, help="lo:hi:step")
    sweep_cmd.add_argument("--l2", required=True, help="lo:hi:step")
    sweep_cmd.add_argument("--l3", required=True, help="lo:hi:step")
    sweep_cmd.add_argument("--predicate", choices=PREDICATES, default="eigenflag-without-LCW")
    sweep_cmd.add_argument("--workers", type=int, default=WORKERS)
    sweep_cmd.add_argument("--out", help="Findings file; stdout when omitted")
    return parser


def _emit(report, fmt):
    sys.stdout.write(report_io.dumps(report) if fmt == "json" else report_io.render_text(report))


def _write(path, text):
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"Wrote {path}")


def _run(args):
    if args.command == "analyze":
        doc = parse_input(args.file, skip_jacobi=args.skip_jacobi)
        report = analyze(doc, starts=args.starts, workers=args.workers)
        _emit(report, args.format)
        if args.json_out:
            _write(args.json_out, report_io.dumps(report))
    elif args.command == "classify-ckf":
        doc = parse_input(args.file)
        if doc.kind != "ckf":
            raise ValidationError(f"{args.file}: classify-ckf needs a ckf document, got {doc.kind}")
        _emit(analyze(doc), args.format)
    elif args.command == "scenario":
        results = run_scenarios(args.name, workers=args.workers)
        for result in results:
            _emit(result.report, args.format)
        for result in results:
            require_pass(result)
    elif args.command == "sweep":
        spec = SweepSpec(
            parse_range(args.l1, "l1"),
            parse_range(args.l2, "l2"),
            parse_range(args.l3, "l3"),
            predicate=args.predicate,
            workers=args.workers,
        )
        text = dump_sweep(sweep(spec))
        if args.out:
            _write(args.out, text)
        else:
            sys.stdout.write(text)
    return 0


def main(argv=None):
    """Run one command; exit code 0 on success, 2 on invalid input, 3 on a golden mismatch."""
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except GoldenMismatchError as e:
        logger.error(str(e))
        return 3
    except ValidationError as e:
        logger.error(str(e))
        return 2


if __name__ == "__main__":
    sys.exit(main())
