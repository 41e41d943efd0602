"""Replay the summary table of quotient categories for the two small algebras.

Each row says whether the entry was checked exactly, supported by sampled
evidence, or left unchecked because it needs a category-level argument.
"""

import argparse
import json
import sys

from verdier.suites import table5_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--json", action="store_true", help="print the suite result as JSON")
    args = ap.parse_args(argv)
    res = table5_suite()
    if args.json:
        print(json.dumps(res.as_dict(), indent=2))
    else:
        print(f"{'algebra':12s} {'column':14s} {'claim':24s} {'status':11s} result")
        for row in res.notes:
            print(row)
        print(res.line())
    return 0 if res.ok else 1


if __name__ == "__main__":
    sys.exit(main())
