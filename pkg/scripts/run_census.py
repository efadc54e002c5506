#!/usr/bin/env python3
"""
Command-line interface for the homology census of random chain complexes.

Every subcommand prints one report (JSON by default, or CSV) to stdout or
to --output. Logs go to stderr.

Usage:
    python run_census.py <command> [options]

Examples:
    # Exact counts of differentials on F_2^4
    python run_census.py count --q 2 --n 4

    # Limit probabilities for even n
    python run_census.py limit --q 2 --parity even --eps 1e-9

    # Monte Carlo against the exact distribution
    python run_census.py sample --q 2 --n 8 --num 200000 --seed 42

    # Brute-force verification up to n = 4
    python run_census.py verify --q 2 --max-n 4

    # Probability sweep as CSV
    python run_census.py table --q-list 2 3 --n-list 2 4 6 --format csv

Exit codes:
    0 success, 2 invalid input, 3 scan too large,
    4 internal invariant breach or disagreement, 1 unexpected error
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

# Add project root to Python path for src imports
current_dir = Path(__file__).parent
project_root = current_dir.parent
sys.path.insert(0, str(project_root))

from src.core.census_runner import CensusRunner  # noqa: E402
from src.core.exceptions import CensusError  # noqa: E402
from src.models.reports import EmpiricalReport, VerifyRun  # noqa: E402
from src.utils.logger import CensusLogger, setup_logger  # noqa: E402

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_DISAGREEMENT = 4


def _common_options() -> argparse.ArgumentParser:
    """Options shared by every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", "-c", type=str, help="Path to census configuration file (YAML)")
    common.add_argument("--format", "-f", dest="fmt", choices=["json", "csv"], help="Output format")
    common.add_argument("--output", "-o", type=Path, help="Write the report to this file instead of stdout")
    common.add_argument("--precision", type=int, help="Decimal places of rendered probabilities")
    common.add_argument("--workers", "-w", type=int,
                        help="Parallel workers (default: $HOMOLOGY_CENSUS_WORKERS or config)")
    common.add_argument("--log-level", "-l", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Logging level (default: config)")
    common.add_argument("--log-file", type=Path, help="Also log to this rotating file")
    common.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    common.add_argument("--quiet", action="store_true", help="Only log warnings and errors")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per census operation."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        description="Homology census of random chain complexes over finite fields",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s count --q 2 --n 4
  %(prog)s limit --q 2 --parity odd --eps 1e-9 --rmax 7
  %(prog)s sample --q 2 --n 8 --num 200000 --seed 42 --workers 4
  %(prog)s verify --q 2 --max-n 4
  %(prog)s table --q-list 2 3 --n-list 2 4 6 --format csv
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", parents=[common], help="Exact counts c_r(q, n) and p_r(q, n)")
    count.add_argument("--q", type=int, required=True, help="Field order (prime power)")
    count.add_argument("--n", type=int, required=True, help="Dimension of V")

    limit = sub.add_parser("limit", parents=[common], help="Limit probabilities p_r(q) as n grows")
    limit.add_argument("--q", type=int, required=True, help="Field order (prime power)")
    limit.add_argument("--parity", choices=["even", "odd"], default="even", help="Parity of n")
    limit.add_argument("--eps", type=str, help="Absolute error bound in (0, 1)")
    limit.add_argument("--rmax", dest="r_cap", type=int, help="Largest homology dimension reported")

    sample = sub.add_parser("sample", parents=[common], help="Monte Carlo sampling with chi-square test")
    sample.add_argument("--q", type=int, required=True, help="Field order (prime power)")
    sample.add_argument("--n", type=int, required=True, help="Dimension of V")
    sample.add_argument("--num", dest="num_samples", type=int, help="Number of samples N")
    sample.add_argument("--seed", type=int, help="Base seed in [0, 2^64)")
    sample.add_argument("--track-matrices", action="store_true", default=None,
                        help="Also count each sampled matrix")

    verify = sub.add_parser("verify", parents=[common], help="Exhaustive enumeration against the formulas")
    verify.add_argument("--q", type=int, required=True, help="Field order (prime power)")
    verify.add_argument("--max-n", type=int, required=True, help="Largest dimension to enumerate")
    verify.add_argument("--max-cost", type=int, help="Largest allowed number of scanned matrices")
    verify.add_argument("--method", choices=["auto", "gf2", "numpy", "python"], help="Scan implementation")
    verify.add_argument("--chunk-size", type=int, help="Matrices per vectorised batch")
    verify.add_argument("--timing", action="store_true", default=None, help="Include wall-clock times")

    table = sub.add_parser("table", parents=[common], help="Sweep of p_r(q, n) over a grid")
    table.add_argument("--q-list", type=int, nargs="*", required=True, help="Field orders")
    table.add_argument("--n-list", type=int, nargs="*", required=True, help="Dimensions")

    return parser


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments (argparse exits with code 2 on errors)."""
    return build_parser().parse_args(argv)


def configure_logging(args: argparse.Namespace, runner: CensusRunner) -> None:
    """Apply config logging settings with CLI overrides."""
    logging_config = runner.config['logging']
    level = args.log_level or logging_config.get('level', 'INFO')
    if args.quiet:
        level = "WARNING"
    elif args.verbose:
        level = "DEBUG"
    log_file = args.log_file or logging_config.get('log_file')
    setup_logger(
        None,
        level=level,
        log_file=log_file,
        console_logging=logging_config.get('console_logging', True),
        file_logging=bool(log_file) and (args.log_file is not None or logging_config.get('file_logging', False)),
        max_file_size_mb=logging_config.get('max_file_size_mb', 50),
        backup_count=logging_config.get('backup_count', 5)
    )


def _overrides(args: argparse.Namespace) -> dict:
    """RunConfig fields given on the command line."""
    keys = (
        'q', 'n', 'q_list', 'n_list', 'parity', 'eps', 'r_cap', 'num_samples', 'seed',
        'workers', 'fmt', 'output', 'precision', 'max_n', 'max_cost', 'chunk_size',
        'method', 'timing', 'track_matrices'
    )
    return {key: getattr(args, key) for key in keys if hasattr(args, key)}


def _diagnostic(error: BaseException) -> str:
    """One-line error message for stderr."""
    message = " ".join(str(error).split())
    return f"error: {type(error).__name__}: {message}"


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    try:
        args = parse_arguments(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_UNEXPECTED

    logger = CensusLogger("run_census")
    try:
        runner = CensusRunner(args.config)
        configure_logging(args, runner)
        cfg = runner.build_run_config(args.command, **_overrides(args))

        logger.start_operation(f"census {args.command}")
        report = runner.run(cfg)
        text = runner.write_report(report, cfg)
        if text is not None:
            sys.stdout.write(text)
            sys.stdout.flush()
        logger.complete_operation(f"census {args.command}")

        if isinstance(report, VerifyRun) and not report.agrees:
            print("error: InvariantBreach: enumeration disagrees with the counting formulas", file=sys.stderr)
            return EXIT_DISAGREEMENT
        if isinstance(report, EmpiricalReport) and not report.consistent:
            logger.warning(f"sample histogram inconsistent with exact distribution (p={report.p_value:.3g}, lower tail {report.lower_tail_p:.3g})")
        return EXIT_OK

    except CensusError as e:
        print(_diagnostic(e), file=sys.stderr)
        return e.exit_code
    except Exception as e:  # noqa: BLE001
        logger.error(f"Unexpected failure: {e}", exc_info=True)
        print(_diagnostic(e), file=sys.stderr)
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
