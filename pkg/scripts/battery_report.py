"""Eigenvalues of the seeded regression battery with their tightest enclosure margins."""

import argparse

from indefspec.enclosures import margin, specs_for
from indefspec.potentials import p_norm
from indefspec.suites import DEFAULT_SEED, battery


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=lambda s: int(s, 16), default=DEFAULT_SEED)
    args = ap.parse_args()
    for i, entry in enumerate(battery(args.seed)):
        V = entry.potential
        print(f"well {i}: breakpoints {tuple(round(b, 4) for b in V.breakpoints)}, "
              f"||V||_1 = {p_norm(V, 1).norm:.4f}")
        specs = specs_for(V)
        for r in entry.results:
            m = min((margin(s, r.lam).value, s.bound_id.value, s.p) for s in specs)
            print(f"   lam = {r.lam.real:+.10f} {r.lam.imag:+.10f}i  certified={r.certified}  "
                  f"tightest {m[1]} (p={m[2]:g}) margin {m[0]:.4g}")


if __name__ == "__main__":
    main()
