#!/usr/bin/env python3
"""Run the full congruence sweep at a chosen budget and save the report stream.

Writes one JSON object per line to the output file (same stream the CLI
`verify` prints) and a human-readable summary table to stderr.

Usage:
    python scripts/run_all_checks.py
    python scripts/run_all_checks.py --max-arg 20000 --out reports.jsonl
"""

import argparse
import json
import sys
import time

from overq.checks import all_check_ids, coverage_manifest, iter_check_reports
from overq.reporting import Budget


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-arg", type=int, default=10_000)
    ap.add_argument("--max-prime", type=int, default=23)
    ap.add_argument("--max-alpha", type=int, default=3)
    ap.add_argument("--out", default="reports.jsonl")
    args = ap.parse_args()

    budget = Budget(args.max_arg, args.max_prime, args.max_alpha)
    ids = all_check_ids()
    t0 = time.perf_counter()
    failures = 0
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"manifest": coverage_manifest()}) + "\n")
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for report in iter_check_reports(ids, budget):
            counts[report.status] += 1
            failures += report.status == "fail"
            fh.write(report.to_json() + "\n")
            print(
                f"{report.check_id:22s} {report.status:8s} "
                f"{report.elapsed_ms:7d}ms  counterexamples={len(report.counterexamples)} "
                f"skipped_points={len(report.skipped_points)}",
                file=sys.stderr,
            )
        fh.write(json.dumps(counts) + "\n")
    print(
        f"\n{counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped "
        f"in {time.perf_counter() - t0:.1f}s  (budget: M={budget.max_argument}, "
        f"p<={budget.max_prime}, alpha<={budget.max_alpha}) -> {args.out}",
        file=sys.stderr,
    )
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
