"""Argument-principle zero counting on rectangles and circles."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

PHASE_REFINE = np.pi / 4
PHASE_FAIL = np.pi / 2
ZERO_ON_CONTOUR = 1e-13


class ContourError(RuntimeError):
    """The contour is too coarse or passes through (or next to) a zero."""


@dataclass(frozen=True)
class ContourSpec:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float
    samples_per_side: int = 64
    max_subdivision_depth: int = 12

    def __post_init__(self):
        if not (self.re_lo < self.re_hi and self.im_lo < self.im_hi):
            raise ValueError("degenerate rectangle")
        if self.im_lo <= 0 <= self.im_hi:
            raise ValueError("contour region must not touch the real axis")

    @property
    def upper(self):
        return self.im_lo > 0

    @property
    def center(self):
        return complex(0.5 * (self.re_lo + self.re_hi), 0.5 * (self.im_lo + self.im_hi))

    @property
    def scale(self):
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def contains(self, z):
        return self.re_lo <= z.real <= self.re_hi and self.im_lo <= z.imag <= self.im_hi

    def quadrants(self, cut=(0.5, 0.5)):
        rm = self.re_lo + cut[0] * (self.re_hi - self.re_lo)
        im = self.im_lo + cut[1] * (self.im_hi - self.im_lo)
        return [
            replace(self, re_hi=rm, im_hi=im),
            replace(self, re_lo=rm, im_hi=im),
            replace(self, re_lo=rm, im_lo=im),
            replace(self, re_hi=rm, im_lo=im),
        ]

    def mirrored(self):
        """The rectangle under z -> -z."""
        return replace(self, re_lo=-self.re_hi, re_hi=-self.re_lo, im_lo=-self.im_hi, im_hi=-self.im_lo)

    def scaled(self, factor):
        return replace(
            self,
            re_lo=factor * self.re_lo,
            re_hi=factor * self.re_hi,
            im_lo=factor * self.im_lo,
            im_hi=factor * self.im_hi,
        )

    def path(self, t):
        """Counter-clockwise boundary, parametrised by ``t`` in [0, 4)."""
        t = np.asarray(t, dtype=float)
        side = np.minimum(np.floor(t).astype(int), 3)
        s = t - side
        c = np.array(
            [
                complex(self.re_lo, self.im_lo),
                complex(self.re_hi, self.im_lo),
                complex(self.re_hi, self.im_hi),
                complex(self.re_lo, self.im_hi),
                complex(self.re_lo, self.im_lo),
            ]
        )
        return c[side] + s * (c[side + 1] - c[side])


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float
    samples: int = 128
    max_subdivision_depth: int = 12

    def path(self, t):
        return self.center + self.radius * np.exp(2j * np.pi * np.asarray(t, dtype=float))


@dataclass
class WindingResult:
    count: int
    total_phase: float
    z: np.ndarray
    f: np.ndarray

    def zero_sum(self):
        """Sum of the enclosed zeros, from a discrete contour integral of z f'/f."""
        dlog = np.log(np.abs(self.f[1:] / self.f[:-1])) + 1j * np.angle(self.f[1:] / self.f[:-1])
        zm = 0.5 * (self.z[1:] + self.z[:-1])
        return complex(np.sum(zm * dlog) / (2j * np.pi))


def _initial_params(contour):
    if isinstance(contour, Circle):
        return np.linspace(0.0, 1.0, contour.samples + 1), 1.0
    n = contour.samples_per_side
    return np.linspace(0.0, 4.0, 4 * n + 1), 4.0


def winding(f, contour) -> WindingResult:
    """Winding number of ``f`` around 0 along the boundary of ``contour``.

    ``f`` must accept an array of complex points.  Segments whose phase
    increment exceeds pi/4 are bisected up to ``max_subdivision_depth``
    times; a remaining step above pi/2 raises :class:`ContourError`.
    """
    t, period = _initial_params(contour)
    z = contour.path(np.mod(t, period))
    z[-1] = z[0]
    vals = np.asarray(f(z[:-1]), dtype=complex)
    vals = np.append(vals, vals[0])
    for _ in range(contour.max_subdivision_depth):
        with np.errstate(divide="ignore", invalid="ignore"):
            steps = np.abs(np.angle(vals[1:] / vals[:-1]))
        bad = np.nonzero(steps > PHASE_REFINE)[0]
        if bad.size == 0:
            break
        tm = 0.5 * (t[bad] + t[bad + 1])
        fm = np.asarray(f(contour.path(tm)), dtype=complex)
        t = np.insert(t, bad + 1, tm)
        vals = np.insert(vals, bad + 1, fm)
        z = contour.path(np.mod(t, period))
        z[-1] = z[0]
    mod = np.abs(vals)
    if not np.all(np.isfinite(vals)):
        raise ContourError("secular function is not finite on the contour")
    if mod.min() <= ZERO_ON_CONTOUR * np.median(mod):
        raise ContourError("zero on contour")
    steps = np.angle(vals[1:] / vals[:-1])
    if np.max(np.abs(steps)) > PHASE_FAIL:
        raise ContourError("contour too coarse or zero on contour")
    total = float(np.sum(steps))
    return WindingResult(int(round(total / (2 * np.pi))), total, z, vals)


def winding_number(f, contour) -> int:
    return winding(f, contour).count
