#!/usr/bin/env python3
"""Run every acceptance criterion and print one line each; exit 1 if any fails."""

import sys

from qboundstate.acceptance import run_all


def main() -> int:
    results = run_all(sys.stdout)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
