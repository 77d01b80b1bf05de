#!/usr/bin/env python3
"""
Construction Benchmark

This script times weight construction, the exhaustive check and the oracle on
every diagram of the bundled corpus.
"""

import argparse
import json
import os
import platform
import time

from frobtwist.corpus import load_all
from frobtwist.oracle import DEFAULT_ORACLE_CAP, oracle_solve
from frobtwist.weights import check_weight, construct


def timed(func, *args, repeat: int = 3):
    """
    Best wall-clock time of several calls.

    Returns:
        (seconds, result of the last call)
    """
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = func(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def get_system_info():
    """Get basic system information for context."""
    return {
        "platform": platform.platform(),
        "processor": platform.processor(),
        "python_version": platform.python_version(),
        "cpu_count": os.cpu_count(),
    }


def run_benchmark(repeat: int = 3, oracle_cap: int = DEFAULT_ORACLE_CAP, json_file: str = None):
    """
    Run the construction benchmark.

    Args:
        repeat: Calls per measurement; the best one is reported
        oracle_cap: Skip the oracle above this many crossings
        json_file: Path to save JSON results (if None, nothing is written)
    """
    print("\nConstruction Benchmark")
    print("======================\n")

    rows = {}
    for name, diagram in load_all().items():
        t_construct, weight = timed(construct, diagram, repeat=repeat)
        t_check, report = timed(check_weight, diagram, weight, repeat=repeat)
        row = {
            "crossings": diagram.n,
            "construct_s": t_construct,
            "check_s": t_check,
            "valid": report.ok,
        }
        if diagram.n <= oracle_cap:
            row["oracle_s"], _ = timed(oracle_solve, diagram, repeat=repeat)
        rows[name] = row

        oracle = f"{row['oracle_s'] * 1000:9.2f} ms" if "oracle_s" in row else "        -"
        print(
            f"  {name:<16} n={diagram.n:<2} construct {t_construct * 1000:9.2f} ms  "
            f"check {t_check * 1000:9.2f} ms  oracle {oracle}"
        )

    results = {
        "system_info": get_system_info(),
        "config": {"repeat": repeat, "oracle_cap": oracle_cap},
        "results": rows,
        "timestamp_formatted": time.strftime("%Y-%m-%d %H:%M:%S"),
    }
    if json_file:
        with open(json_file, "w") as f:
            json.dump(results, f, indent=2)
        print(f"\nResults saved to {json_file}")
    return results


def parse_args():
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(description="Weight construction benchmark")
    parser.add_argument("--repeat", type=int, default=3, help="Calls per measurement (default: 3)")
    parser.add_argument(
        "--oracle-cap",
        type=int,
        default=DEFAULT_ORACLE_CAP,
        help=f"Largest diagram given to the oracle (default: {DEFAULT_ORACLE_CAP})",
    )
    parser.add_argument("--output", type=str, default=None, help="Output file for JSON results")
    return parser.parse_args()


if __name__ == "__main__":
    args = parse_args()
    run_benchmark(repeat=args.repeat, oracle_cap=args.oracle_cap, json_file=args.output)
