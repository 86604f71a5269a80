"""
Example: Reproduce the error tables of the three built-in symbol pairs.

For each pair this:
1. Certifies positivity of g and monotonicity of f
2. Precomputes an expansion table on the grid n_1 = 100, K = 5
3. Sweeps n = 256..4096 against reference spectra and prints the table

Usage:
    python scripts/examples/reproduce_tables.py --digits 60 --out results/
    python scripts/examples/reproduce_tables.py --examples 1 --digits 16
"""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import Optional, Sequence

from matrixless.expansion import GridSpec, precompute
from matrixless.harness import ReferenceCache, figure_dump, format_table_csv, format_table_text, table_sweep
from matrixless.spectra import PrecisionSpec
from matrixless.symbols import certify, example_pair
from matrixless.utils import parse_int_list, write_text_atomic

# Levels each pair supports; Example 3 degrades beyond k = 2
LEVELS = {1: [1, 2, 3, 4, 5], 2: [1, 2, 3, 4, 5], 3: [1, 2, 3]}


def reproduce(number: int, orders: list[int], digits: int, oracle_digits: int,
              out: Optional[Path], jobs: int) -> None:
    """Precompute, sweep and print the error table of one example."""
    print(f"\n{'='*70}")
    print(f"Example {number}")
    print(f"{'='*70}\n")

    pair = certify(example_pair(number))
    print(f"  l = {pair.l}")
    print(f"  g = {pair.g}")
    if pair.quotient is not None:
        print(f"  f = {pair.quotient}")

    table = precompute(pair, GridSpec(100, 5), prec=PrecisionSpec.from_digits(digits), jobs=jobs)
    sweep = table_sweep(
        table,
        pair,
        orders,
        LEVELS[number],
        prec=PrecisionSpec.from_digits(oracle_digits),
        cache=ReferenceCache(),
        jobs=jobs,
    )
    text = format_table_text(sweep)
    print(text)

    if out is not None:
        target = out / f"example{number}"
        table.save(target / "table.json")
        write_text_atomic(target / "errors.txt", text)
        write_text_atomic(target / "errors.csv", format_table_csv(sweep))
        for report in sweep.cells():
            write_text_atomic(target / f"figure_n{report.n}_k{report.k}.csv", figure_dump(report))
        print(f"  Results written to {target}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="Reproduce the error tables of the built-in examples.")
    parser.add_argument("--examples", type=str, default="1,2,3", help="Example numbers")
    parser.add_argument("--orders", type=str, default="256,512,1024,2048,4096", help="Matrix orders")
    parser.add_argument("--digits", type=int, default=60, help="Precompute digits")
    parser.add_argument("--oracle-digits", dest="oracle_digits", type=int, default=16, help="Reference digits")
    parser.add_argument("--out", type=str, default=None, help="Output directory")
    parser.add_argument("--jobs", type=int, default=1, help="Worker processes")
    args = parser.parse_args(argv)

    out = Path(args.out) if args.out else None
    for number in parse_int_list(args.examples):
        reproduce(number, parse_int_list(args.orders), args.digits, args.oracle_digits, out, args.jobs)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
