"""Spectral enclosures as signed margins (RHS - LHS; >= 0 means inside),
their boundary curves, and the eigenvalue sum and counting checks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .potentials import Delta, as_potential, exp_weighted_l1, p_norm
from .spectral_core import DomainError, diagonal_maximizer, sqrt_upper

SQRT2 = math.sqrt(2.0)
LT_CONST = 3 * math.sqrt(3) / 8


class BoundId(str, enum.Enum):
    BST_12 = "BST_12"  # |lam|^{1/2} <= ||V||_1
    L1_14 = "L1_14"  # sqrt2 |lam| <= sqrt(|lam| + |Re lam|) ||V||_1
    IMAG_L1_15 = "IMAG_L1_15"  # |Im lam| <= (3 sqrt3 / 8) ||V||_1^2
    LP_16 = "LP_16"  # 2^{3/(2p)-1} |lam|^{1/p} |Im lam|^{1-1/p} <= (|lam|+|Re lam|)^{1/(2p)} ||V||_p
    IMAG_LP_18 = "IMAG_LP_18"  # |Im lam| <= 2 (3 sqrt3/16)^{1/(2p-1)} ||V||_p^{2p/(2p-1)}
    SPLIT_19 = "SPLIT_19"  # half-line norms, non-real lam
    LINF = "LINF"  # |Im lam| <= 2 ||V||_inf


_ALIASES = {"bst": BoundId.BST_12, "l1": BoundId.L1_14, "lp": BoundId.LP_16}


def bound_id(name):
    if isinstance(name, BoundId):
        return name
    key = str(name)
    if key.lower() in _ALIASES:
        return _ALIASES[key.lower()]
    return BoundId(key)


@dataclass(frozen=True)
class EnclosureSpec:
    bound_id: BoundId
    p: float = 1.0
    q: float | None = None
    q_plus: float | None = None
    q_minus: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "bound_id", bound_id(self.bound_id))
        b = self.bound_id
        if b is BoundId.SPLIT_19:
            if self.q_plus is None or self.q_minus is None:
                raise DomainError("SPLIT_19 needs q_plus and q_minus")
            if not 1 < self.p < math.inf:
                raise DomainError("SPLIT_19 needs 1 < p < inf")
        elif self.q is None:
            raise DomainError(f"{b.value} needs q")
        if b in (BoundId.LP_16,) and not 1 < self.p < math.inf:
            raise DomainError("LP_16 needs 1 < p < inf")
        if b is BoundId.IMAG_LP_18 and not self.p > 1:
            raise DomainError("IMAG_LP_18 needs p > 1")

    def scaled(self, rho):
        """Norms of V_rho(x) = rho^2 V(rho x)."""
        f = rho ** (2 - 1 / self.p) if math.isfinite(self.p) else rho**2
        return EnclosureSpec(
            self.bound_id,
            self.p,
            None if self.q is None else f * self.q,
            None if self.q_plus is None else f * self.q_plus,
            None if self.q_minus is None else f * self.q_minus,
        )


@dataclass(frozen=True)
class Margin:
    value: float
    bound_id: BoundId


def _sqrt_parts(lam):
    """(|Re sqrt(lam)|, |Im sqrt(lam)|) from |lam|, Re lam and |Im lam| only,
    without cancellation, so every symmetry of the margins is exact."""
    r, x, y = abs(lam), lam.real, abs(lam.imag)
    if x >= 0:
        a = math.sqrt(0.5 * (r + x))
        return a, (y / (2 * a) if a else 0.0)
    b = math.sqrt(0.5 * (r - x))
    return y / (2 * b), b


def _margin_value(spec, lam):
    r = abs(lam)
    re, im = abs(lam.real), abs(lam.imag)
    p, q = spec.p, spec.q
    b = spec.bound_id
    if b is BoundId.BST_12:
        return q - math.sqrt(r)
    if b is BoundId.L1_14:
        return math.sqrt(r + re) * q - SQRT2 * r
    if b is BoundId.IMAG_L1_15:
        return LT_CONST * q * q - im
    if b is BoundId.LP_16:
        lhs = 2 ** (3 / (2 * p) - 1) * r ** (1 / p) * im ** (1 - 1 / p)
        return (r + re) ** (1 / (2 * p)) * q - lhs
    if b is BoundId.IMAG_LP_18:
        if math.isinf(p):
            return 2 * q - im
        return 2 * (3 * math.sqrt(3) / 16) ** (1 / (2 * p - 1)) * q ** (2 * p / (2 * p - 1)) - im
    if b is BoundId.LINF:
        return 2 * q - im
    if b is BoundId.SPLIT_19:
        if lam.imag == 0:
            return math.inf  # the bound only concerns non-real eigenvalues
        sa, sb = _sqrt_parts(lam)
        qq = p / (p - 1)
        ra, rb = sa ** (1 / qq), sb ** (1 / qq)
        nm, np_ = spec.q_minus, spec.q_plus
        rhs = max(nm / ra + SQRT2 * np_ / rb, SQRT2 * nm / ra + np_ / rb)
        return rhs - SQRT2 * qq ** (1 / qq) * math.sqrt(r)
    raise DomainError(f"unknown bound {b}")


def margin(spec: EnclosureSpec, lam) -> Margin:
    lam = complex(lam)
    return Margin(float(_margin_value(spec, lam)), spec.bound_id)


def boundary_radius(bound, p, q, theta) -> float:
    """r(theta) with r e^{i theta} on the boundary of the bound's region."""
    b = bound_id(bound)
    c = abs(math.cos(theta))
    if b is BoundId.BST_12:
        return q * q
    if b is BoundId.L1_14:
        return (1 + c) * q * q / 2
    if b is BoundId.LP_16:
        s = abs(math.sin(theta))
        if s == 0:
            return math.inf
        # LHS/RHS grows like r^{1 - 1/(2p)}, so the root is unique and explicit
        base = (1 + c) ** (1 / (2 * p)) * q * 2 ** (1 - 3 / (2 * p)) * s ** (-(1 - 1 / p))
        return base ** (2 * p / (2 * p - 1))
    raise DomainError(f"{b.value} has no radial boundary")


def trace_curve(bound, p, q, samples):
    """Closed boundary polyline, theta_k = 2 pi (k + 1/2) / samples.

    Returns an array of rows (theta, Re lam, Im lam).  The half-step offset
    keeps theta away from the real axis, where LP_16 is unbounded.
    """
    if samples < 16:
        raise DomainError("samples must be >= 16")
    theta = 2 * np.pi * (np.arange(samples) + 0.5) / samples
    r = np.array([boundary_radius(bound, p, q, t) for t in theta])
    return np.column_stack([theta, r * np.cos(theta), r * np.sin(theta)])


def delta_reachable_radius(theta, q):
    """Radius on the ray arg(lam) = theta reachable by a point interaction of
    strength q, i.e. q^2 (sup_x |G_{e^{i theta}}(x, x)|)^2.

    Equals the L1_14 radius only at theta = pi/2.
    """
    E = sqrt_upper(complex(math.cos(theta), math.sin(theta)))
    _, ratio = diagonal_maximizer(E)
    return ratio**2 * boundary_radius(BoundId.L1_14, 1, q, theta)


def specs_for(V, ps=(1.5, 2.0, 4.0)):
    """All enclosures applicable to V (delta: L^1 only)."""
    V = as_potential(V)
    q1 = p_norm(V, 1).norm
    out = [
        EnclosureSpec(BoundId.BST_12, 1, q1),
        EnclosureSpec(BoundId.L1_14, 1, q1),
        EnclosureSpec(BoundId.IMAG_L1_15, 1, q1),
    ]
    if isinstance(V, Delta):
        return out
    for p in ps:
        nr = p_norm(V, p)
        out += [
            EnclosureSpec(BoundId.LP_16, p, nr.norm),
            EnclosureSpec(BoundId.IMAG_LP_18, p, nr.norm),
            EnclosureSpec(BoundId.SPLIT_19, p, nr.norm, nr.norm_plus, nr.norm_minus),
        ]
    out.append(EnclosureSpec(BoundId.LINF, math.inf, p_norm(V, math.inf).norm))
    return out


def lieb_thirring_sum(results, q1):
    """(sum of multiplicity * |Im lam|, that sum / q1^2)."""
    total = float(sum(r.winding_multiplicity * abs(r.lam.imag) for r in results))
    if not results:
        return 0.0, 0.0
    return total, total / q1**2


def count_bound(V, eps):
    """(1/eps^2) (int e^{eps|x|} |V| dx)^2."""
    return exp_weighted_l1(V, eps) ** 2 / eps**2
