"""Curve CSV and minimal SVG output."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

import numpy as np

CSV_HEADER = ("theta", "re", "im")
PALETTE = (
    "#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400",
    "#16a085", "#7f8c8d", "#b7950b", "#2c3e50", "#e84393",
)


def _fmt(x):
    return format(float(x), ".17g")


def curve_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_text(path, text):
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return str(path)


def read_curve_csv(path) -> np.ndarray:
    with open(path, encoding="utf-8", newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if tuple(header) != CSV_HEADER:
            raise ValueError(f"{path}: expected header {','.join(CSV_HEADER)}")
        return np.array([[float(v) for v in row] for row in r if row], dtype=float)


def svg_overlay(curves, size=480, margin=36, title=None) -> str:
    """Closed polylines for (label, rows) pairs with rows (theta, re, im),
    plus the two axes, scaled to a common square box."""
    pts = [np.asarray(rows)[:, 1:3] for _, rows in curves]
    finite = np.concatenate([p[np.all(np.isfinite(p), axis=1)] for p in pts])
    ext = float(np.max(np.abs(finite))) if finite.size else 1.0
    ext = ext * 1.05 if ext > 0 else 1.0
    half = (size - 2 * margin) / 2
    cx = cy = size / 2

    def to_px(z):
        return cx + z[:, 0] / ext * half, cy - z[:, 1] / ext * half

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="{margin}" y1="{cy}" x2="{size - margin}" y2="{cy}" stroke="black" stroke-width="1"/>',
        f'<line x1="{cx}" y1="{margin}" x2="{cx}" y2="{size - margin}" stroke="black" stroke-width="1"/>',
        f'<text x="{size - margin + 4}" y="{cy + 4}" font-size="12">Re</text>',
        f'<text x="{cx + 4}" y="{margin - 6}" font-size="12">Im</text>',
        f'<text x="{size - margin}" y="{cy + 16}" font-size="10" text-anchor="end">{_fmt_tick(ext)}</text>',
    ]
    if title:
        out.append(f'<text x="{margin}" y="{margin / 2 + 4}" font-size="13">{_escape(title)}</text>')
    for i, ((label, _), p) in enumerate(zip(curves, pts)):
        p = p[np.all(np.isfinite(p), axis=1)]
        xs, ys = to_px(p)
        coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in zip(xs, ys))
        color = PALETTE[i % len(PALETTE)]
        out.append(
            f'<polygon points="{coords}" fill="none" stroke="{color}" stroke-width="1.2">'
            f"<title>{_escape(label)}</title></polygon>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _fmt_tick(x):
    return f"{x:.3g}" if math.isfinite(x) else "inf"


def _escape(s):
    return str(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
