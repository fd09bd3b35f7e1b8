"""Free resolvent of the indefinite Laplacian sgn(x)(-d^2/dx^2).

Everything here is a closed-form or quadrature evaluation of the explicit
Green's function of ``H0 - lam`` for ``lam`` in the upper half-plane.  The
lower half-plane is reached through :func:`reflect_problem`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

ALPHA = (1 - 1j) / 2
ARCCOS_CLIP = 1e-12


class DomainError(ValueError):
    """Input lies outside the set where an operation is defined."""


@dataclass(frozen=True)
class ComplexEnergy:
    lam: complex
    sqrt_lam: complex

    @property
    def a(self):
        return self.sqrt_lam.real

    @property
    def b(self):
        return self.sqrt_lam.imag

    @property
    def upper(self):
        return self.lam.imag > 0


@dataclass(frozen=True)
class GreenParams:
    energy: ComplexEnergy
    alpha: complex = ALPHA


@dataclass(frozen=True)
class KreinComponents:
    mu: complex
    sqrt_neg_lambda: complex
    resolvent_norm_bound: float
    rank_one_norm: float


def _sqrt_cut_positive(z):
    # branch cut on [0, inf): arg z in (0, 2pi] -> half-arg in (0, pi]
    r = np.sqrt(np.abs(z))
    phi = np.angle(z)
    phi = np.where(phi < 0, phi + 2 * np.pi, phi)
    # positive reals are the limit from above: half-arg 0
    return r * np.exp(0.5j * phi)


def sqrt_branch(lam):
    """Vectorised square root with ``Im >= 0`` (cut along the positive axis)."""
    return _sqrt_cut_positive(np.asarray(lam, dtype=complex))


def sqrt_upper(lam) -> ComplexEnergy:
    """Branch of sqrt(lam) with non-negative real and imaginary parts on the
    closed upper half-plane.

    The cut runs along ``[0, inf)``; positive reals take the limit from
    above (``sqrt(4) = 2``), negative reals give ``i*sqrt(|lam|)``.
    """
    lam = complex(lam)
    if lam == 0:
        raise DomainError("lam = 0 is excluded")
    r = math.sqrt(abs(lam))
    phi = cmath.phase(lam)
    if phi < 0:
        phi += 2 * math.pi
    root = r * cmath.exp(0.5j * phi)
    if lam.imag == 0 and lam.real > 0:
        root = complex(r, 0.0)
    elif lam.imag == 0 and lam.real < 0:
        root = complex(0.0, r)
    return ComplexEnergy(lam, root)


def _require_closed_upper(energy):
    if energy.lam.imag < 0:
        raise DomainError(
            "Green's function is tabulated for Im(lam) >= 0; "
            "use reflect_problem for the lower half-plane"
        )


def green_values(sqrt_lam, x, y):
    """G_lam(x, y) with ``sqrt_lam``, ``x`` and ``y`` broadcast together."""
    k, x, y = np.broadcast_arrays(
        np.asarray(sqrt_lam, dtype=complex), np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    )
    xp, yp = x >= 0, y >= 0
    out = np.empty(x.shape, dtype=complex)

    m = xp & yp
    km = k[m]
    out[m] = ALPHA * np.exp(1j * km * (x[m] + y[m])) + np.conj(ALPHA) * np.exp(
        1j * km * np.abs(x[m] - y[m])
    )
    m = xp & ~yp
    out[m] = -np.exp(k[m] * (1j * x[m] + y[m]))
    m = ~xp & yp
    out[m] = np.exp(k[m] * (x[m] + 1j * y[m]))
    m = ~xp & ~yp
    km = k[m]
    out[m] = -np.conj(ALPHA) * np.exp(km * (x[m] + y[m])) - ALPHA * np.exp(
        -km * np.abs(x[m] - y[m])
    )
    return out / (2 * ALPHA * k)


def green_kernel(energy: ComplexEnergy, x, y):
    """Vectorised G_lam(x, y) on broadcast arrays ``x``, ``y``."""
    _require_closed_upper(energy)
    return green_values(energy.sqrt_lam, x, y)


def green_eval(params: GreenParams, x: float, y: float) -> complex:
    """Scalar G_lam(x, y) for lam in the closed upper half-plane."""
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError("x and y must be finite")
    return complex(green_kernel(params.energy, x, y))


def green_dx(energy: ComplexEnergy, x, y):
    """Partial derivative of G_lam(x, y) in x, off the diagonal x = y."""
    _require_closed_upper(energy)
    k = energy.sqrt_lam
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    xp, yp = x >= 0, y >= 0
    out = np.empty(x.shape, dtype=complex)
    pref = 1.0 / (2 * ALPHA * k)
    s = np.sign(x - y)

    m = xp & yp
    out[m] = 1j * k * (
        ALPHA * np.exp(1j * k * (x[m] + y[m]))
        + s[m] * np.conj(ALPHA) * np.exp(1j * k * np.abs(x[m] - y[m]))
    )
    m = xp & ~yp
    out[m] = -1j * k * np.exp(k * (1j * x[m] + y[m]))
    m = ~xp & yp
    out[m] = k * np.exp(k * (x[m] + 1j * y[m]))
    m = ~xp & ~yp
    out[m] = -k * (
        np.conj(ALPHA) * np.exp(k * (x[m] + y[m]))
        - s[m] * ALPHA * np.exp(-k * np.abs(x[m] - y[m]))
    )
    return pref * out


def signed_diagonal(energy: ComplexEnergy, x):
    """sgn(x) G_lam(x, x), continuous across x = 0 with value 1/(2 alpha sqrt(lam)).

    Both one-sided limits agree, which lets a point interaction sit at the
    origin itself.
    """
    _require_closed_upper(energy)
    k = energy.sqrt_lam
    x = np.asarray(x, dtype=float)
    pos = (ALPHA * np.exp(2j * k * np.abs(x)) + np.conj(ALPHA)) / (2 * ALPHA * k)
    neg = (np.conj(ALPHA) * np.exp(-2 * k * np.abs(x)) + ALPHA) / (2 * ALPHA * k)
    return np.where(x >= 0, pos, neg)


def green_bound(energy: ComplexEnergy) -> float:
    """sqrt(1/(2|lam|) + |Re lam|/(2|lam|^2)), a pointwise bound on |G_lam|.

    The bound is attained (at x = y = 0) only when Re lam = 0; see
    :func:`diagonal_maximizer` for the actual supremum.
    """
    lam = energy.lam
    if lam == 0:
        raise DomainError("lam = 0 is excluded")
    _require_closed_upper(energy)
    r = abs(lam)
    return math.sqrt(1 / (2 * r) + abs(lam.real) / (2 * r * r))


def saturation_point(energy: ComplexEnergy) -> float:
    """Location of the point interaction in the delta sharpness construction.

    For ``b <= a`` (Re lam >= 0) this is ``arccos(2ab/(a^2+b^2)) / (2a)`` on
    the positive half-line; for ``b > a`` the mirrored point
    ``-arccos(2ab/(a^2+b^2)) / (2b)``.  |G_lam(x0, x0)| reaches
    :func:`green_bound` here only when ``a == b`` (x0 = 0).  For ``a != b``
    it falls short and is not even a critical point of |G_lam(x, x)|.
    """
    a, b = energy.a, energy.b
    if not (a > 0 and b > 0):
        raise DomainError("saturation point needs Re sqrt(lam) > 0 and Im sqrt(lam) > 0")
    c = 2 * a * b / (a * a + b * b)
    if c > 1:
        if c > 1 + ARCCOS_CLIP:
            raise DomainError("arccos argument exceeds 1")
        c = 1.0
    if b <= a:
        return math.acos(c) / (2 * a)
    return -math.acos(c) / (2 * b)


def _diag_profile_max(a, b):
    """max over y >= 0 of 1 + e^{-4by} + 2 e^{-2by} sin(2ay) and its argmax."""
    if a <= b:
        return 0.0, 2.0

    def h(y):
        return a * math.cos(2 * a * y) - b * math.sin(2 * a * y) - b * math.exp(-2 * b * y)

    from scipy.optimize import brentq

    y0 = brentq(h, 0.0, math.pi / (4 * a), xtol=1e-15, rtol=1e-15)
    val = 1 + math.exp(-4 * b * y0) + 2 * math.exp(-2 * b * y0) * math.sin(2 * a * y0)
    return y0, val


def diagonal_maximizer(energy: ComplexEnergy):
    """True maximiser of |G_lam(x, x)| and the ratio of that maximum to
    :func:`green_bound`.

    The ratio is 1 only on the imaginary axis; elsewhere it is strictly
    smaller.  The off-diagonal values never exceed the diagonal maximum.
    """
    a, b = energy.a, energy.b
    if not (a > 0 and b > 0):
        raise DomainError("needs Re sqrt(lam) > 0 and Im sqrt(lam) > 0")
    y_pos, v_pos = _diag_profile_max(a, b)
    y_neg, v_neg = _diag_profile_max(b, a)
    x0, v = (y_pos, v_pos) if v_pos >= v_neg else (-y_neg, v_neg)
    g = math.sqrt(v / (4 * abs(energy.lam)))
    return x0, g / green_bound(energy)


def apply_free_resolvent(energy: ComplexEnergy, f, scheme, out_nodes=None):
    """Quadrature approximation of ``int G_lam(x, y) f(y) dy``.

    ``f`` holds samples on ``scheme.nodes``; the result is evaluated at
    ``out_nodes`` (defaults to the same nodes).
    """
    if len(scheme) == 0:
        raise DomainError("empty quadrature grid")
    if energy.lam.imag <= 0:
        raise DomainError("free resolvent needs Im(lam) > 0")
    f = np.asarray(f, dtype=complex)
    x = scheme.nodes if out_nodes is None else np.asarray(out_nodes, dtype=float)
    G = green_kernel(energy, x[:, None], scheme.nodes[None, :])
    return G @ (scheme.weights * f)


def krein_mu(energy: ComplexEnergy) -> KreinComponents:
    """Rank-one correction data of the Krein-type resolvent formula.

    ``mu`` is the unique nonzero eigenvalue of the rank-one term.  The
    operator norm of that term is ``||f||^2 / |sqrt(lam) + sqrt(-lam)|``,
    returned separately as ``rank_one_norm``; it differs from ``|mu|`` in
    general (``mu`` vanishes on the imaginary axis).
    """
    lam = energy.lam
    if lam.imag <= 0:
        raise DomainError("krein_mu needs Im(lam) > 0")
    s = energy.sqrt_lam
    t = sqrt_upper(-lam).sqrt_lam
    mu = (1 / s.imag - 1 / t.imag) / (2j * (s + t))
    norm_f_sq = 1 / (2 * s.imag) + 1 / (2 * t.imag)
    return KreinComponents(
        mu=mu,
        sqrt_neg_lambda=t,
        resolvent_norm_bound=2 / abs(lam.imag),
        rank_one_norm=norm_f_sq / abs(s + t),
    )


def reflect_problem(lam, V):
    """Map a lower half-plane problem to the upper half-plane.

    With (Jf)(x) = f(-x) one has J H_V J = -H_{V(-.)}, so ``lam`` is an
    eigenvalue of H_V exactly when ``-lam`` is one of H_{V(-.)}.
    """
    lam = complex(lam)
    if lam.imag >= 0:
        raise DomainError("reflection is only needed for Im(lam) < 0")
    return -lam, V.reflected()
