"""Command-line interface: ``indefspec {enclosure-curve, solve, verify}``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .contour import ContourSpec
from .eigensolver import find_eigenvalues, residual_certify
from .emit import curve_csv, svg_overlay, write_text
from .enclosures import BoundId, bound_id, margin, specs_for, trace_curve
from .potentials import (
    PotentialFileError,
    SquareWellDesign,
    WignerVonNeumann,
    load_potential,
    potential_to_dict,
)
from .spectral_core import DomainError
from .suites import DEFAULT_SEED, SUITE_NAMES, Check, SuiteReport, run_suite

SCHEMA_VERSION = 1

PRESETS = {
    # q = 1: the circle |lam| = q^2 against the sharp L1 curve
    "fig1": [(BoundId.BST_12, 1.0, 1.0), (BoundId.L1_14, 1.0, 1.0)],
    "fig1-family": [(BoundId.L1_14, 1.0, 1.35**j / 7) for j in range(1, 10)],
    "fig2": [(BoundId.LP_16, 1.25, 1.25**j / 10) for j in range(1, 11)],
}


def _num(x):
    x = float(x)
    return x if math.isfinite(x) else str(x)


def _dump_json(obj, path):
    return write_text(path, json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _label(b, p, q):
    return f"{b.value} p={p:g} q={q:.6g}"


# --------------------------------------------------------------------------
# enclosure-curve


def cmd_enclosure_curve(bound, p, q, samples, out_csv, out_svg=None, overlay_q=(), preset=None):
    rep = SuiteReport("enclosure-curve")
    if preset is not None:
        curves = PRESETS[preset]
    else:
        b = bound_id(bound)
        curves = [(b, p, q)] + [(b, p, qq) for qq in overlay_q]
    traced = [(_label(b, pp, qq), trace_curve(b, pp, qq, samples)) for b, pp, qq in curves]

    if preset is None:
        rep.artifacts.append(write_text(out_csv, curve_csv(traced[0][1])))
    else:
        out = Path(out_csv)
        for i, (_, rows) in enumerate(traced, 1):
            path = out.with_name(f"{out.stem}_{i:02d}{out.suffix or '.csv'}")
            rep.artifacts.append(write_text(path, curve_csv(rows)))
    if out_svg is not None:
        title = preset or _label(*curves[0])
        rep.artifacts.append(write_text(out_svg, svg_overlay(traced, title=title)))
    for label, rows in traced:
        finite = bool(math.isfinite(float(abs(rows[:, 1:]).max())))
        rep.checks.append(
            Check(f"curve {label}: finite samples", "enclosure figures", finite, float(len(rows)), float(samples))
        )
    return rep


# --------------------------------------------------------------------------
# solve


def _margins(specs, lam):
    out = {}
    for s in specs:
        key = s.bound_id.value if s.bound_id in (BoundId.BST_12, BoundId.L1_14, BoundId.IMAG_L1_15) else (
            f"{s.bound_id.value}[p={s.p:g}]"
        )
        out[key] = _num(margin(s, lam).value)
    return out


def parse_region(text):
    parts = [t.strip() for t in str(text).split(",")]
    if len(parts) != 4:
        raise ValueError(f"region must be RE0,RE1,IM0,IM1, got {text!r}")
    try:
        vals = [float(t) for t in parts]
    except ValueError as exc:
        raise ValueError(f"region must be four numbers, got {text!r}") from exc
    return ContourSpec(*vals)


def cmd_solve(potential_file, region, out_json):
    V = load_potential(potential_file)
    if isinstance(region, str):
        region = parse_region(region)
    rep = SuiteReport("solve")
    doc = {
        "schema_version": SCHEMA_VERSION,
        "potential": potential_to_dict(V),
        "region": [region.re_lo, region.re_hi, region.im_lo, region.im_hi],
        "eigenvalues": [],
    }
    if isinstance(V, WignerVonNeumann):
        # embedded eigenvalue: certified by residual, never by contour counting
        res = residual_certify(V, V.eigenvalue, V.psi)
        doc["embedded"] = [{"re": _num(V.eigenvalue), "im": 0.0, "residual": _num(res)}]
        rep.checks.append(Check("embedded eigenvalue residual", "Wigner-von Neumann family", res <= 1e-6, res, 1e-6))
        rep.artifacts.append(_dump_json(doc, out_json))
        return rep

    W = V.potential if isinstance(V, SquareWellDesign) else V
    results = find_eigenvalues(W, region)
    specs = specs_for(W)
    for r in results:
        doc["eigenvalues"].append(
            {
                "re": _num(r.lam.real),
                "im": _num(r.lam.imag),
                "residual": _num(r.residual),
                "multiplicity": r.winding_multiplicity,
                "method": r.method.value,
                "certified": r.certified,
                "margins": _margins(specs, r.lam),
            }
        )
        if r.certified:
            worst = min(margin(s, r.lam).value for s in specs)
            rep.checks.append(
                Check(f"lam = {r.lam:.10g}: inside all enclosures", "spectral enclosures", worst >= -1e-6, worst, -1e-6)
            )
    n_uncert = sum(not r.certified for r in results)
    rep.checks.append(Check("all eigenvalues certified", "argument principle", n_uncert == 0, float(n_uncert), 0.0))

    if isinstance(V, SquareWellDesign):
        doc["design"] = {
            "lam_pred": {"re": V.lam_pred.real, "im": V.lam_pred.imag},
            "rouche_radius": V.rouche_radius,
        }
        ok = [r.lam for r in results if r.certified]
        if ok:
            lam = min(ok, key=lambda z: abs(z - V.lam_pred))
            e, mu = V.eps, V.mu
            re_err = abs(lam.real - mu)
            im_err = abs(lam.imag / (mu * e) - 2)
            doc["design"]["flags"] = {"re": re_err <= 5 * e * mu, "im": im_err <= 0.1}
            rep.checks.append(Check("square well: |Re lam - mu|", "square well construction", re_err <= 5 * e * mu,
                                    re_err, 5 * e * mu))
            rep.checks.append(Check("square well: |Im lam/(mu eps) - 2|", "square well construction", im_err <= 0.1,
                                    im_err, 0.1))
    rep.artifacts.append(_dump_json(doc, out_json))
    return rep


# --------------------------------------------------------------------------
# verify


def cmd_verify(suite, seed=DEFAULT_SEED, out_json=None):
    rep = run_suite(suite, seed)
    if out_json is not None:
        rep.artifacts.append(_dump_json(rep.to_dict(), out_json))
    return rep


# --------------------------------------------------------------------------
# argument parsing


def _seed(text):
    try:
        return int(text, 16)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"seed must be hexadecimal, got {text!r}") from exc


def _q_list(text):
    return tuple(float(t) for t in text.split(",") if t.strip())


def build_parser():
    ap = argparse.ArgumentParser(prog="indefspec", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("enclosure-curve", help="trace an enclosure boundary to CSV (and SVG)")
    c.add_argument("--bound", choices=("bst", "l1", "lp"), default="l1")
    c.add_argument("--p", type=float, default=1.0)
    c.add_argument("--q", type=float, default=1.0)
    c.add_argument("--samples", type=int, default=256)
    c.add_argument("--out", required=True, help="CSV path (a name stem when --preset is given)")
    c.add_argument("--svg")
    c.add_argument("--overlay-q", type=_q_list, default=(), help="extra q values drawn in the SVG")
    c.add_argument("--preset", choices=sorted(PRESETS))

    s = sub.add_parser("solve", help="locate eigenvalues of a JSON potential in a rectangle")
    s.add_argument("--potential", required=True)
    s.add_argument("--region", required=True, help="RE0,RE1,IM0,IM1")
    s.add_argument("--out", required=True)

    v = sub.add_parser("verify", help="run an acceptance suite")
    v.add_argument("--suite", choices=SUITE_NAMES, required=True)
    v.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="hexadecimal, default 5EED")
    v.add_argument("--json", dest="out_json")
    return ap


def _glue_negative_values(argv):
    """Let ``--region -1,1,0.1,2`` through argparse (it looks like a flag)."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--region":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--region={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    try:
        if args.command == "enclosure-curve":
            if args.preset is None and args.bound == "lp" and not args.p > 1:
                raise DomainError("--bound lp needs --p > 1")
            rep = cmd_enclosure_curve(
                args.bound, args.p, args.q, args.samples, args.out, args.svg, args.overlay_q, args.preset
            )
        elif args.command == "solve":
            rep = cmd_solve(args.potential, parse_region(args.region), args.out)
        else:
            rep = cmd_verify(args.suite, args.seed, args.out_json)
    except (PotentialFileError, DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(rep.summary())
    for a in rep.artifacts:
        print(f"wrote {a}")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
