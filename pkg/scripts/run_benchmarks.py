#!/usr/bin/env python3
"""Run the three Monte-Carlo benchmarks and write per-trial + summary CSVs.

Equivalent to running `rwtv experiment table1|table2|clusterstats` three
times with shared settings; prints compact result tables as it goes.
"""

import argparse
import os
from pathlib import Path

from rwtv.cli import main as cli_main


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", type=Path, default=Path("benchmark_results"))
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    args = parser.parse_args()

    for which in ("table1", "table2", "clusterstats"):
        print(f"== {which} ({args.runs} runs per setting) ==")
        code = cli_main(
            [
                "experiment", which,
                "--runs", str(args.runs),
                "--seed", str(args.seed),
                "--out-dir", str(args.out_dir),
                "--workers", str(args.workers),
            ]
        )
        if code != 0:
            raise SystemExit(code)
    print(f"CSV output in {args.out_dir}/")


if __name__ == "__main__":
    main()
