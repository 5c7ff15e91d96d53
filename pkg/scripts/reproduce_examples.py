#!/usr/bin/env python3
"""Re-run every pinned worked example and report one line per fixture."""

import argparse
import sys

from padicmetrics.fixtures import run_all


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--quiet", action="store_true", help="only print failures and the summary"
    )
    args = parser.parse_args()

    results = run_all()
    failed = 0
    for result in results:
        if not result.passed:
            failed += 1
        if args.quiet and result.passed:
            continue
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.detail}")
    print(f"{len(results) - failed}/{len(results)} fixtures reproduce")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
