"""Print one PASS/FAIL line per acceptance criterion (add -v for every check)."""

import argparse
import time

from indefspec.suites import CRITERIA, DEFAULT_SEED, run_criterion


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=lambda s: int(s, 16), default=DEFAULT_SEED)
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    n_ok = 0
    for n in sorted(CRITERIA):
        t0 = time.perf_counter()
        rep = run_criterion(n, args.seed)
        dt = time.perf_counter() - t0
        n_ok += rep.passed
        print(f"criterion {n:2d}: {'PASS' if rep.passed else 'FAIL'}  ({dt:.2f} s)")
        if args.verbose or not rep.passed:
            for c in rep.checks:
                mark = "  ok " if c.passed else "  BAD"
                print(f"   {mark} {c.name}: measured={c.measured:.6g} tol={c.tolerance:.6g} {c.detail}")
    print(f"{n_ok}/{len(CRITERIA)} criteria pass")


if __name__ == "__main__":
    main()
