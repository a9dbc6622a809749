"""Run the main-path-versus-oracle sweep and write the JSON report.

    python scripts/run_sweep.py --max-order 6 --out sweep6.json
"""

import argparse
import sys
import time

from coprolong.corpus import SweepConfig
from coprolong.workspace import dumps


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=6)
    ap.add_argument("--max-a", type=int, default=4)
    ap.add_argument("--guard", type=int, default=2**20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sections", type=int, default=3)
    ap.add_argument("--out", help="report path (stdout when omitted)")
    args = ap.parse_args(argv)
    config = SweepConfig(args.max_order, args.max_a, args.guard, args.seed, args.sections)

    t0 = time.perf_counter()
    seen = [0]

    def progress(case):
        seen[0] += 1
        if seen[0] % 200 == 0:
            print(f"{seen[0]} cases, {time.perf_counter() - t0:.0f}s, at {case.label}", file=sys.stderr)

    report = config.run(progress)
    text = dumps(report.to_dict())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"{report.systems} systems in {time.perf_counter() - t0:.1f}s; "
          f"theorem checks {'PASS' if report.theorems_pass else 'FAIL'}", file=sys.stderr)
    return 0 if report.theorems_pass else 1


if __name__ == "__main__":
    sys.exit(main())
