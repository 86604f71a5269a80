"""
Command-line front end.

    matrixless certify    --example 1 --out verdict.json
    matrixless precompute --example 1 --n1 100 --K 5 --digits 60 --out table.json
    matrixless approx     --table table.json --n 1000000 --k 4 --out spectrum.txt
    matrixless errors     --table table.json --orders 256,512,1024 --levels 1,2,3 --out results/

Results go to stdout or the --out files; logs go to stderr. Exit codes:
0 success, 1 invalid arguments, 2 hypothesis violation, 3 numerical
failure, 4 I/O or digest mismatch.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from pydantic import ValidationError

from .config import Config
from .exceptions import HypothesisViolation, MatrixlessError
from .expansion import ExpansionTable, precompute, reconstruct
from .harness import (
    ReferenceCache,
    figure_dump,
    format_table_csv,
    format_table_text,
    table_sweep,
)
from .logger import get_logger, set_level
from .schemas import RunConfig
from .symbols import SymbolPair, certify, check_monotone
from .utils.files import write_json_atomic, write_text_atomic
from .utils.validators import fraction_to_text

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 4


# =============================================================================
# Helpers
# =============================================================================

def _table_pair(config: RunConfig, table: ExpansionTable) -> SymbolPair:
    """Pair from the flags when given (checked against the table), else from the table header."""
    if config.has_symbols():
        pair = config.pair()
        table.check_pair(pair)
        return pair
    return SymbolPair.from_coefficients(table.l, table.g)


def _require(config: RunConfig, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(config, name) is None]
    if missing:
        raise ValueError(f"missing required option(s): {', '.join(missing)}")


# =============================================================================
# Commands
# =============================================================================

def cmd_certify(config: RunConfig) -> int:
    """Check positivity of g and monotonicity of f; print the range of f."""
    pair = config.pair()
    verdict = check_monotone(pair, config.samples)
    lines = [
        f"l = {pair.l}",
        f"g = {pair.g}",
        f"certified: {'yes' if verdict.certified else 'no'}",
    ]
    if verdict.quotient is not None:
        lines.append(f"f = {verdict.quotient}")
    if verdict.certified:
        lines.append(f"m_f = {fraction_to_text(verdict.m_f)}")
        lines.append(f"M_f = {fraction_to_text(verdict.M_f)}")
    else:
        lines.append(f"reason: {verdict.reason}")
    print("\n".join(lines))

    if config.out:
        write_json_atomic(config.out, {
            "pair": (verdict.pair or pair).to_dict(),
            "verdict": verdict.to_dict(),
        })
        logger.info("Verdict written to %s", config.out)

    if not verdict.certified:
        logger.error("Symbol pair rejected: %s", verdict.reason)
        return HypothesisViolation.exit_code
    return EXIT_OK


def cmd_precompute(config: RunConfig) -> int:
    """Build and save the expansion table."""
    try:
        pair = certify(config.pair(), config.samples)
    except HypothesisViolation:
        logger.error("Refusing to precompute; run 'matrixless certify' with the same symbols for details")
        raise
    table = precompute(
        pair,
        config.grid(),
        space=config.space,
        prec=config.precision(),
        jobs=config.jobs,
    )
    out = Path(config.out or f"expansion-{pair.digest()[:12]}.json")
    table.save(out)
    print(out)
    return EXIT_OK


def cmd_approx(config: RunConfig) -> int:
    """Print (or write) the n approximated eigenvalues, one per line, nondecreasing."""
    _require(config, "table", "n", "k")
    table = ExpansionTable.load(config.table)
    pair = _table_pair(config, table)
    result = reconstruct(table, pair, config.n, config.k)
    text = "\n".join(repr(v) for v in np.sort(result.values).tolist()) + "\n"
    if config.out:
        write_text_atomic(config.out, text)
        logger.info("%d eigenvalues written to %s", config.n, config.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_errors(config: RunConfig) -> int:
    """Error sweep: text and CSV tables plus one figure file per (n, k) cell."""
    _require(config, "table")
    table = ExpansionTable.load(config.table)
    pair = _table_pair(config, table)
    sweep = table_sweep(
        table,
        pair,
        config.orders,
        config.sweep_levels(table.K),
        prec=config.oracle_precision(),
        cache=ReferenceCache(Config.CACHE_DIR),
        jobs=config.jobs,
    )
    text = format_table_text(sweep)
    sys.stdout.write(text)

    if config.out:
        out = Path(config.out)
        write_text_atomic(out / "errors.txt", text)
        write_text_atomic(out / "errors.csv", format_table_csv(sweep))
        write_json_atomic(out / "errors.json", {
            "digest": table.digest,
            "grid": table.grid.to_dict(),
            "precision": table.precision.to_dict(),
            "sweep": sweep.to_dict(),
        })
        for report in sweep.cells():
            write_text_atomic(out / f"figure_n{report.n}_k{report.k}.csv", figure_dump(report))
        logger.info("Error tables and %d figure files written to %s", len(sweep), out)
    return EXIT_OK


COMMANDS = {
    "certify": cmd_certify,
    "precompute": cmd_precompute,
    "approx": cmd_approx,
    "errors": cmd_errors,
}


# =============================================================================
# Entry point
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matrixless",
        description="Matrix-less eigenvalue approximation for preconditioned Toeplitz pencils.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="Run config document (TOML or JSON)")
    common.add_argument("--l", type=str, default=None, help="Cosine coefficients of l, e.g. '[2,-1,-1]'")
    common.add_argument("--g", type=str, default=None, help="Cosine coefficients of g, e.g. '[3,2]'")
    common.add_argument("--example", type=int, default=None, help="Built-in symbol pair 1, 2 or 3")
    common.add_argument("--n1", type=int, default=None, help="Coarse grid size n_1")
    common.add_argument("--K", type=int, default=None, help="Number of levels")
    common.add_argument("--digits", type=int, default=None, help="Precompute digits (<=16 double, >=20 extended)")
    common.add_argument("--oracle-digits", dest="oracle_digits", type=int, default=None,
                        help="Reference spectrum digits")
    common.add_argument("--space", choices=["s", "lambda"], default=None, help="Expansion variable")
    common.add_argument("--orders", type=str, default=None, help="Matrix orders, e.g. 256,512,1024")
    common.add_argument("--levels", type=str, default=None, help="Levels, e.g. 1,2,3")
    common.add_argument("--out", type=str, default=None, help="Output file or directory")
    common.add_argument("--jobs", type=int, default=None, help="Worker processes")
    common.add_argument("--table", type=str, default=None, help="Expansion table file")
    common.add_argument("--n", type=int, default=None, help="Matrix order")
    common.add_argument("--k", type=int, default=None, help="Level")
    common.add_argument("--samples", type=int, default=None, help="Monotonicity sample count")
    common.add_argument("--log-level", dest="log_level", type=str, default=None,
                        help="DEBUG, INFO, WARNING or ERROR")

    subparsers.add_parser("certify", parents=[common], help="Check the hypotheses on l and g")
    subparsers.add_parser("precompute", parents=[common], help="Compute and save an expansion table")
    subparsers.add_parser("approx", parents=[common], help="Approximate all eigenvalues of X_n")
    subparsers.add_parser("errors", parents=[common], help="Error tables against reference spectra")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        set_level(args.log_level)

    overrides = {
        key: value
        for key, value in vars(args).items()
        if key not in {"command", "config", "log_level"}
    }
    try:
        config = RunConfig.from_sources(args.config, **overrides)
        return COMMANDS[args.command](config)
    except ValidationError as e:
        logger.error("Invalid configuration:\n%s", e)
        return EXIT_USAGE
    except MatrixlessError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return e.exit_code
    except OSError as e:
        logger.error("I/O error: %s", e)
        return EXIT_IO
    except ValueError as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
