"""Run every numbered claim and print a table; exits non-zero if any claim fails.

    python3 scripts/reproduce_all.py [--prec 128] [--json out.json]
"""
import argparse
import json
import sys

from dfinite.repro import run_all


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--prec", type=int, default=128)
    ap.add_argument("--json", help="also write the reports to this file")
    args = ap.parse_args(argv)
    reports = run_all(args.prec)
    for r in reports:
        print(r.line())
        if r.convention:
            print(f"    convention: {r.convention}")
    n_pass = sum(r.passed for r in reports)
    print(f"{n_pass}/{len(reports)} claims pass, {sum(r.wall_time for r in reports):.1f}s total")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2)
    return 0 if n_pass == len(reports) else 1


if __name__ == "__main__":
    sys.exit(main())
