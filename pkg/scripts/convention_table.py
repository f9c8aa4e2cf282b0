#!/usr/bin/env python3
"""Print the three counting conventions side by side.

The stipulation count is the sequence the machine reproduces; raw cuts and
reflection orbits differ from it (first at width 2).  For 3-row boards the
known closed form 2^(n+1) - n - 1 tracks the orbit column, not the cuts.

Usage:
    python scripts/convention_table.py [--m 4] [--max-n 12]
"""

import argparse

from gridcuts import count_report
from gridcuts.oracle import delahaye_formula


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=4)
    parser.add_argument("--max-n", type=int, default=12)
    args = parser.parse_args()

    show_formula = args.m == 3
    header = f"{'n':>3} {'canonical':>10} {'cuts':>8} {'orbits':>8}"
    if show_formula:
        header += f" {'2^(k+1)-k-1':>12}"
    print(header)
    for n in range(1, args.max_n + 1):
        report = count_report(args.m, n)
        line = f"{n:>3} {report.canonical:>10} {report.cuts:>8} {report.orbits:>8}"
        if show_formula:
            formula = delahaye_formula(n // 2) if n % 2 == 0 else "-"
            line += f" {formula:>12}"
        print(line)
    if not report.canonical_validated:
        print(f"(canonical column unvalidated for m={args.m}; stipulations assume 4 rows)")


if __name__ == "__main__":
    main()
