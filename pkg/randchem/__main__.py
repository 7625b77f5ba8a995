import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from randchem.commands import (
    cmd_compare,
    cmd_cost,
    cmd_distribution,
    cmd_schedule,
    cmd_simulate,
)
from randchem.errors import DomainError, InfeasibleScheduleError, NumericalError
from randchem.output import OutputRecord
from randchem.schedule import ScheduleMethod
from randchem.settings_manager import SettingsManager

logger = logging.getLogger("randchem")

EXIT_OK = 0
EXIT_ARGUMENT = 2
EXIT_INFEASIBLE = 3
EXIT_NUMERIC = 4


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n0", type=int, required=True, help="Size of the full set.")
    common.add_argument("--k", type=int, required=True, help="Size of the secret subset.")
    common.add_argument(
        "--format",
        choices=["json", "csv"],
        default="json",
        help="Output format. Default: json",
    )
    common.add_argument("--out", help="Write the output here instead of stdout.")
    common.add_argument(
        "--tolerance",
        type=float,
        help="Log-space tolerance of the exact stage solve. Default: RANDCHEM_TOLERANCE or 1e-10",
    )
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress to stderr (-vv for debug output).",
    )
    return common


def _schedule_arguments(
    parser: argparse.ArgumentParser, default: ScheduleMethod = ScheduleMethod.EXACT
) -> None:
    parser.add_argument(
        "--method",
        choices=[method.value for method in ScheduleMethod],
        default=default.value,
        help=f"Schedule family. Default: {default.value}",
    )
    parser.add_argument(
        "--stages",
        type=int,
        help="Number of stages M. Default: the optimal integer stage count.",
    )


def build_parser() -> argparse.ArgumentParser:
    """Command-line parser with one subcommand per analysis."""
    parser = argparse.ArgumentParser(
        prog="randchem",
        description="randchem - optimal stage schedules for random chemistry subset search",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()

    for name, help_text in (
        ("schedule", "Stage sizes and per-stage probabilities."),
        ("cost", "Expected cost of a schedule against the theoretical optimum."),
    ):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        _schedule_arguments(sub)
        sub.add_argument(
            "--integerize", action="store_true", help="Map continuous sizes to integers."
        )

    simulate_parser = subparsers.add_parser(
        "simulate", parents=[common], help="Monte Carlo runs of the integerized schedule."
    )
    _schedule_arguments(simulate_parser, default=ScheduleMethod.APPROX)
    simulate_parser.add_argument("--runs", type=int, default=100_000, help="Default: 100000")
    simulate_parser.add_argument("--seed", type=int, required=True, help="Unsigned 64-bit seed.")
    simulate_parser.add_argument("--histogram-out", help="Write the histogram CSV here.")
    simulate_parser.add_argument(
        "--workers",
        type=int,
        help="Worker processes. Results do not depend on it. Default: RANDCHEM_WORKERS or 1",
    )

    distribution_parser = subparsers.add_parser(
        "distribution", parents=[common], help="Run-length PMF and tail probabilities."
    )
    _schedule_arguments(distribution_parser)
    distribution_parser.add_argument(
        "-l", "--length", type=int, help="Also report P(X > length)."
    )
    distribution_parser.add_argument(
        "--integerize", action="store_true", help="Map continuous sizes to integers."
    )
    distribution_parser.add_argument(
        "--epsilon",
        type=float,
        help="Tail mass allowed to be truncated. Default: RANDCHEM_EPSILON or 1e-9",
    )

    subparsers.add_parser(
        "compare", parents=[common], help="Exact, approximate and halving schedules side by side."
    )
    return parser


def _dispatch(args: argparse.Namespace) -> OutputRecord:
    if args.command == "schedule":
        return cmd_schedule(args.n0, args.k, args.method, args.stages, args.integerize)
    if args.command == "cost":
        return cmd_cost(args.n0, args.k, args.method, args.stages, args.integerize)
    if args.command == "simulate":
        return cmd_simulate(
            args.n0,
            args.k,
            args.method,
            args.stages,
            runs=args.runs,
            seed=args.seed,
            histogram_out=args.histogram_out,
        )
    if args.command == "distribution":
        return cmd_distribution(
            args.n0,
            args.k,
            args.method,
            args.stages,
            length=args.length,
            integerize=args.integerize,
        )
    return cmd_compare(args.n0, args.k)


def _emit(record: OutputRecord, output_format: str, out: Optional[str]) -> None:
    text = record.to_csv() if output_format == "csv" else record.to_json() + "\n"
    if out:
        Path(out).write_text(text)
        logger.info("output written to %s", out)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for randchem.

    Parses the command line, initializes the settings singleton from flags,
    environment variables and a ``.env`` file, runs the subcommand and writes
    its record as JSON or CSV.

    Returns:
        Exit code: 0 on success, 2 on invalid arguments, 3 when the stage
        count is infeasible, 4 on an internal numeric failure.
    """
    load_dotenv()

    args = build_parser().parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )

    try:
        SettingsManager.reset()
        SettingsManager.initialize(
            tolerance=args.tolerance,
            epsilon=getattr(args, "epsilon", None),
            workers=getattr(args, "workers", None),
        )
        record = _dispatch(args)
        _emit(record, args.format, args.out)
    except InfeasibleScheduleError as exc:
        print(f"randchem: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DomainError as exc:
        print(f"randchem: invalid argument: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    except NumericalError as exc:
        print(f"randchem: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
