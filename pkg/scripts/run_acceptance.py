"""Run every verification suite and print one line per acceptance criterion.

    python3 scripts/run_acceptance.py [--json report.json]
"""

import argparse
import json
import sys
import time

from qschub import verify


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", help="write the full check list here")
    args = ap.parse_args(argv)

    checks, timings = [], {}
    for name in verify.SUITES:
        got, dt = verify.timed_suite(name)
        checks.extend(got)
        timings[name] = round(dt, 2)

    summary = verify.summarize(checks)
    for k, ok in summary["criteria"].items():
        failing = [c.name for c in checks if str(c.criterion) == k and not c.passed]
        tail = f"  ({'; '.join(failing)})" if failing else ""
        print(f"criterion {int(k):2d}: {'PASS' if ok else 'FAIL'}{tail}")
    print("suite seconds:", json.dumps(timings))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(verify._jsonable(summary), fh, indent=1, sort_keys=True)
    return 0 if summary["passed"] else 1


if __name__ == "__main__":
    t0 = time.perf_counter()
    code = main()
    print(f"total {time.perf_counter() - t0:.1f}s")
    sys.exit(code)
