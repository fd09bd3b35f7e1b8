"""Write the enclosure figure curves (CSV) and overlays (SVG) into a directory."""

import argparse
from pathlib import Path

from indefspec.cli import PRESETS, cmd_enclosure_curve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="figures")
    ap.add_argument("--samples", type=int, default=512)
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name in PRESETS:
        rep = cmd_enclosure_curve(None, None, None, args.samples, out / f"{name}.csv", out / f"{name}.svg",
                                  preset=name)
        print(f"{name}: {len(rep.artifacts)} files")


if __name__ == "__main__":
    main()
