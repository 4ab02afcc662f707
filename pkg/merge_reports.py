#!/usr/bin/env python3
"""
Merge the JSON reports of `cli.py verify --shard-ct N --shard-id i --report ...` runs.

Usage:
    python merge_reports.py --input shard0.jsonl shard1.jsonl ... --output merged.json
"""

import argparse
import json
import sys
from pathlib import Path

from oracle.theorem_suite import SUITE_CHECKS, SuiteReport

CHECK_ORDER = {check_id: i for i, check_id in enumerate(SUITE_CHECKS)}


def merge_reports(reports: list[SuiteReport]) -> SuiteReport:
    """One report in grid order from shards of the same run.

    Raises:
        ValueError: If the shards come from runs with a different grid, seed or sample size.
    """
    if not reports:
        raise ValueError("No reports to merge")
    first = reports[0]
    for report in reports[1:]:
        if (report.grid, report.seed, report.max_triples) != (first.grid, first.seed, first.max_triples):
            raise ValueError(
                f"Shard {report.shard_id} ran grid={report.grid!r} seed={report.seed}, "
                f"shard {first.shard_id} ran grid={first.grid!r} seed={first.seed}"
            )
    seen_shards = sorted({report.shard_id for report in reports})
    expected = list(range(first.shard_ct))
    if seen_shards != expected:
        print(
            f"Warning: merging shards {seen_shards} of {first.shard_ct}",
            file=sys.stderr,
        )
    results = [result for report in reports for result in report.results]
    results.sort(key=lambda result: (result.point_index, CHECK_ORDER[result.theorem]))
    return SuiteReport(
        grid=first.grid,
        seed=first.seed,
        max_triples=first.max_triples,
        shard_id=0,
        shard_ct=1,
        results=results,
    )


def read_reports(input_files: list[str]) -> list[SuiteReport]:
    """Every report line of every input file; invalid lines are skipped with a warning."""
    reports = []
    for input_file in input_files:
        try:
            with open(input_file, "r") as infile:
                for line in infile:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        reports.append(SuiteReport.from_dict(json.loads(line)))
                    except (json.JSONDecodeError, KeyError, TypeError):
                        print(
                            f"Warning: Skipping invalid report line in {input_file}",
                            file=sys.stderr,
                        )
            print(f"Processed: {input_file}", file=sys.stderr)
        except FileNotFoundError:
            print(f"Error: File not found: {input_file}", file=sys.stderr)
            continue
    return reports


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Merge sharded verify reports into one")
    parser.add_argument(
        "--input", "-i", nargs="+", required=True, help="Input JSONL report files to merge"
    )
    parser.add_argument("--output", "-o", required=True, help="Output JSON report path")
    parser.add_argument(
        "--text", action="store_true", default=False, help="Also print the merged THEOREM lines"
    )
    args = parser.parse_args(argv)

    reports = read_reports(args.input)
    try:
        merged = merge_reports(reports)
    except ValueError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 2

    output_path = Path(args.output)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(json.dumps(merged.to_dict(), indent=2, sort_keys=True) + "\n")
    if args.text:
        sys.stdout.write(merged.to_text())
    print(
        f"Merged {len(reports)} reports with {len(merged.results)} checks into {args.output}",
        file=sys.stderr,
    )
    return 0 if merged.passed else 1


if __name__ == "__main__":
    sys.exit(main())
