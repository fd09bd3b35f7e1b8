"""Eigenvalues of sgn(x)(-d^2/dx^2 + V) off the real axis, and residual
certification of (possibly embedded) eigenpairs.

The eigen-equation is psi'' = (V - lam sgn x) psi.  Three secular
functions are available: a closed form for point interactions, a
transfer-matrix Wronskian for piecewise-constant wells and the Fredholm
determinant of the signed Birman-Schwinger operator.  Zeros are located by
argument-principle quadrisection and polished by Newton's method.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from . import birman_schwinger as bs
from .contour import Circle, ContourError, ContourSpec, winding
from .potentials import Delta, PiecewiseConstant, WignerVonNeumann, as_potential, moments
from .spectral_core import ALPHA, DomainError, green_kernel, sqrt_branch, sqrt_upper

CERTIFY_TOL = 1e-8
NEWTON_TOL = 1e-10
NEWTON_STEP = 1e-7
MAX_DEPTH = 10
MIN_AXIS_GAP = 1e-3
QUAD_CUT = (0.4987, 0.5021)
DEDUPE_TOL = 1e-9


class Method(str, enum.Enum):
    DELTA = "DeltaClosedForm"
    TRANSFER = "TransferMatrix"
    DETERMINANT = "Determinant"


@dataclass(frozen=True)
class EigenvalueResult:
    lam: complex
    residual: float
    winding_multiplicity: int
    method: Method
    certified: bool


# --------------------------------------------------------------------------
# secular functions (vectorised over lam)


def secular_delta(energy, amplitude, location):
    """1 + c sgn(x0) G_lam(x0, x0) for the point interaction c delta(x - x0).

    ``sgn(x) G_lam(x, x)`` is continuous at the origin, so x0 = 0 is allowed.
    """
    lam = energy.lam if hasattr(energy, "lam") else energy
    if np.any(np.imag(lam) < 0):
        raise DomainError("secular_delta needs Im lam >= 0")
    if not np.all(np.asarray(lam) != 0):
        raise DomainError("lam = 0 is excluded")
    k = sqrt_branch(lam)
    x0 = abs(float(location))
    if location >= 0:
        sd = (ALPHA * np.exp(2j * k * x0) + np.conj(ALPHA)) / (2 * ALPHA * k)
    else:
        sd = (np.conj(ALPHA) * np.exp(-2 * k * x0) + ALPHA) / (2 * ALPHA * k)
    out = 1 + complex(amplitude) * sd
    return complex(out) if np.ndim(out) == 0 else out


def _segments_with_zero(V: PiecewiseConstant):
    return V.segments()


def _propagate(y, logs, kappa, h):
    """Advance (psi, psi') over a constant segment of signed length ``h``.

    Uses cosh/sinh written as e^{kappa|h|}(1 +- e^{-2 kappa |h|})/2 with
    Re kappa >= 0; the positive factor e^{Re(kappa)|h|}/2 and the vector
    norm are moved into ``logs`` so nothing overflows.
    """
    s = abs(h)
    kh = kappa * s
    E = np.exp(-2 * kh)
    c = 1 + E
    # (1 - e^{-2 kappa s}) / kappa, finite as kappa -> 0
    small = np.abs(kh) < 1e-8
    kap_safe = np.where(small, 1.0, kappa)
    sk = np.where(small, 2 * s * (1 - kh), -np.expm1(-2 * kh) / kap_safe)
    ks = kappa * kappa * sk  # kappa (1 - e^{-2 kappa s})
    sg = 1.0 if h > 0 else -1.0
    phase = np.exp(1j * kh.imag)
    p0, p1 = y
    n0 = phase * (c * p0 + sg * sk * p1)
    n1 = phase * (sg * ks * p0 + c * p1)
    nrm = np.sqrt(np.abs(n0) ** 2 + np.abs(n1) ** 2)
    logs = logs + kh.real + np.log(nrm / 2)
    return (n0 / nrm, n1 / nrm), logs


def _kappa(z):
    r = np.sqrt(np.asarray(z, dtype=complex))
    return np.where(r.real < 0, -r, r)


def secular_piecewise_lam(lam, V: PiecewiseConstant, normalize=True):
    """Transfer-matrix Wronskian psi_L psi_R' - psi_L' psi_R at x = 0.

    psi_L ~ e^{sqrt(lam) x} to the left of the support, psi_R ~ e^{i sqrt(lam) x}
    to the right.  With ``normalize`` the result is divided by the positive
    propagation amplitudes; the zeros and the phase are unchanged.
    """
    lam = np.asarray(lam, dtype=complex)
    k = sqrt_branch(lam)
    segs = _segments_with_zero(V)
    left = [s for s in segs if s[1] <= 0]
    right = [s for s in segs if s[0] >= 0]
    one = np.ones_like(lam)

    yl = (one, k * one)
    logs_l = np.zeros(lam.shape)
    x = min(V.breakpoints[0], 0.0)
    for lo, hi, v in left:
        if lo > x:  # free gap
            yl, logs_l = _propagate(yl, logs_l, _kappa(lam), lo - x)
        yl, logs_l = _propagate(yl, logs_l, _kappa(v + lam), hi - lo)
        x = hi
    if x < 0:
        yl, logs_l = _propagate(yl, logs_l, _kappa(lam), -x)

    yr = (one, 1j * k)
    logs_r = np.zeros(lam.shape)
    x = max(V.breakpoints[-1], 0.0)
    for lo, hi, v in reversed(right):
        if hi < x:
            yr, logs_r = _propagate(yr, logs_r, _kappa(-lam), hi - x)
        yr, logs_r = _propagate(yr, logs_r, _kappa(v - lam), lo - hi)
        x = lo
    if x > 0:
        yr, logs_r = _propagate(yr, logs_r, _kappa(-lam), -x)

    W = yl[0] * yr[1] - yl[1] * yr[0]
    logs = logs_l + logs_r
    if normalize == "parts":
        return W, logs
    if not normalize:
        W = W * np.exp(logs)
    return W if W.ndim else complex(W)


def _local_transfer(V):
    """Analytic rescalings of the Wronskian around a base point (for Newton)."""

    def at(z0):
        _, ref = secular_piecewise_lam(np.asarray([z0]), V, normalize="parts")

        def g(z):
            W, logs = secular_piecewise_lam(np.asarray([z]), V, normalize="parts")
            return complex(W[0] * np.exp(logs[0] - ref[0]))

        return g

    return at


def secular_piecewise(energy, V: PiecewiseConstant):
    if energy.lam.imag < 0:
        raise DomainError("secular_piecewise needs Im lam >= 0; use reflect_problem")
    return secular_piecewise_lam(energy.lam, V)


def secular_determinant_lam(lam, V, panels_per_unit=None):
    """det(I + K) of the signed Birman-Schwinger operator, looped over ``lam``."""
    lam_arr = np.atleast_1d(np.asarray(lam, dtype=complex))
    out = np.empty(lam_arr.shape, dtype=complex)
    for i, z in enumerate(lam_arr.flat):
        E = sqrt_upper(z)
        sch = bs.default_scheme(V, E, panels_per_unit)
        out.flat[i] = bs.det(bs.assemble(V, E, sch, signed=True))
    return out if np.ndim(lam) else complex(out[0])


def secular_function(V, method=None):
    """(callable of lam, Method) for an upper half-plane search."""
    V = as_potential(V)
    if isinstance(V, Delta):
        return (lambda z: secular_delta(z, V.amplitude, V.location)), Method.DELTA
    if isinstance(V, PiecewiseConstant):
        if method in (None, Method.TRANSFER, "transfer"):
            f = lambda z: secular_piecewise_lam(z, V)  # noqa: E731
            f.local = _local_transfer(V)
            return f, Method.TRANSFER
        if method in (Method.DETERMINANT, "determinant"):
            return (lambda z: secular_determinant_lam(z, V)), Method.DETERMINANT
    raise DomainError(f"no secular function for {type(V).__name__} with method {method}")


# --------------------------------------------------------------------------
# root finding


def newton(f, z0, tol=NEWTON_TOL, max_iter=50, scale=None):
    """Newton's method with a central difference of relative step 1e-7.

    Returns (z, |f(z)|, converged) where convergence means |f(z)| <= tol*scale.
    """
    z = complex(z0)
    scale = 1.0 if scale is None else scale
    local = getattr(f, "local", None)
    fz = complex(f(z))
    for _ in range(max_iter):
        if abs(fz) <= tol * scale:
            return z, abs(fz), True
        # an analytic version of f near z (f itself may carry a positive,
        # non-analytic normalisation)
        g = local(z) if local is not None else f
        gz = complex(g(z))
        h = NEWTON_STEP * max(abs(z), 1e-300)
        d = (complex(g(z + h)) - complex(g(z - h))) / (2 * h)
        if d == 0 or not np.isfinite(d):
            break
        step = gz / d
        z_new = z - step
        f_new = complex(f(z_new))
        # damp if the step overshoots
        damp = 0
        while not abs(f_new) < abs(fz) and damp < 30:
            step *= 0.5
            z_new = z - step
            f_new = complex(f(z_new))
            damp += 1
        if damp == 30:
            break
        z, fz = z_new, f_new
        if abs(step) <= 1e-15 * abs(z):
            break
    return z, abs(fz), abs(fz) <= tol * scale


def _winding_robust(f, cell):
    """Winding number, nudging the rectangle if the contour hits a zero."""
    last = None
    for attempt in range(4):
        c = cell
        if attempt:
            d = 1e-3 * attempt * cell.scale
            c = replace(
                cell,
                re_lo=cell.re_lo - d,
                re_hi=cell.re_hi + 0.7 * d,
                im_lo=max(cell.im_lo - 0.3 * d, 0.5 * cell.im_lo)
                if cell.im_lo > 0
                else cell.im_lo - 0.3 * d,
                im_hi=cell.im_hi + 0.9 * d,
            )
        try:
            return winding(f, c), c
        except ContourError as exc:
            last = exc
    raise last


def _search(f, region, method, max_depth):
    results = []
    uncertified = []
    stack = [(region, 0)]
    while stack:
        cell, depth = stack.pop()
        wr, cell = _winding_robust(f, cell)
        if wr.count <= 0:
            continue
        scale = float(np.median(np.abs(wr.f)))
        if wr.count == 1 or depth >= max_depth:
            z0 = wr.zero_sum() / wr.count
            if not cell.contains(z0):
                z0 = cell.center
            z, res, ok = newton(f, z0, scale=scale)
            rel = res / scale
            ok = ok and cell.contains(z) and rel <= CERTIFY_TOL
            if ok or depth >= max_depth:
                if not cell.contains(z):
                    z, rel = z0, abs(complex(f(z0))) / scale
                r = EigenvalueResult(z, rel, wr.count, method, ok)
                (results if ok else uncertified).append(r)
                continue
        # off-centre cuts keep symmetric spectra (e.g. Re lam = 0) off the cell edges
        for q in cell.quadrants(QUAD_CUT):
            stack.append((q, depth + 1))
    return _dedupe(results, region.scale), _dedupe(uncertified, region.scale)


def _dedupe(results, scale):
    """Drop repeats of one zero reached from two (nudged, overlapping) cells."""
    out = []
    for r in results:
        if all(abs(r.lam - o.lam) > DEDUPE_TOL * scale for o in out):
            out.append(r)
    return out


def _sort(results):
    return sorted(results, key=lambda r: (round(r.lam.real, 12), r.lam.imag))


def _check_region(region: ContourSpec):
    gap = min(abs(region.im_lo), abs(region.im_hi))
    if gap < MIN_AXIS_GAP * region.scale:
        raise DomainError("region must keep a distance >= 1e-3 * size from the real axis")


def find_eigenvalues(V, region: ContourSpec, method=None, max_depth=MAX_DEPTH):
    """All eigenvalues in ``region`` (certified ones first-class; uncertified
    ones are returned with ``certified=False``)."""
    _check_region(region)
    V = as_potential(V)
    if not region.upper:
        from .spectral_core import reflect_problem

        # lam eigenvalue of H_V  <=>  -lam eigenvalue of H_{V(-.)}
        _, Vr = reflect_problem(complex(0, -1), V)
        found = find_eigenvalues(Vr, region.mirrored(), method, max_depth)
        return _sort([replace(r, lam=-r.lam) for r in found])
    f, m = secular_function(V, method)
    ok, bad = _search(f, region, m, max_depth)
    return _sort(ok) + _sort(bad)


def find_all_eigenvalues(V, half_width, im_max, im_min=None, method=None):
    """Search the two rectangles [-w, w] x +-[im_min, im_max]."""
    im_min = MIN_AXIS_GAP * 2 * half_width if im_min is None else im_min
    up = ContourSpec(-half_width, half_width, im_min, im_max)
    down = ContourSpec(-half_width, half_width, -im_max, -im_min)
    return find_eigenvalues(V, up, method) + find_eigenvalues(V, down, method)


def isolating_disc(f, center, radius, max_halvings=30):
    """Largest radius radius/2^j whose circle around ``center`` winds once."""
    r = radius
    for _ in range(max_halvings):
        try:
            if winding(f, Circle(center, r)).count == 1:
                return r
        except ContourError:
            pass
        r *= 0.5
    raise DomainError("no isolating disc found")


# --------------------------------------------------------------------------
# weak coupling


def weak_coupling_predict(V, eps):
    """Leading-order eigenvalue eps^2 v^2 / (1 - i)^2 of H_{eps V}, v = int V.

    Requires Re v + Im v < 0 (so Im sqrt(lam) > 0) and Re v < Im v (so the
    eigenvalue lies in the upper half-plane).
    """
    eps = float(eps)
    if not eps > 0:
        raise DomainError("eps must be positive")
    m = moments(V)
    v = m.v_plus + m.v_minus
    if not (v.real + v.imag < 0):
        raise DomainError(f"Re(v) + Im(v) < 0 fails for v = int V = {v}")
    if not (v.real < v.imag):
        raise DomainError(f"Re(v) < Im(v) fails for v = int V = {v}")
    return eps**2 * v**2 / (1 - 1j) ** 2


# --------------------------------------------------------------------------
# eigenfunctions and residual certification


def eigenfunction_delta(V: Delta, lam):
    """psi(x) = G_lam(x, x0)."""
    E = sqrt_upper(lam)
    return lambda x: green_kernel(E, x, V.location)


def eigenfunction_piecewise(V: PiecewiseConstant, lam):
    """psi ~ e^{sqrt(lam) x} on the far left, continued through the wells and
    by the decaying free solution beyond the support."""
    lam = complex(lam)
    k = complex(sqrt_upper(lam).sqrt_lam)
    segs = V.segments()
    x_s = min(V.breakpoints[0], 0.0)
    x_e = max(V.breakpoints[-1], 0.0)
    pieces = []  # (lo, hi, kappa^2, psi(lo), psi'(lo))
    y = np.array([1.0 + 0j, k])
    x = x_s
    edges = sorted({x_s, x_e, 0.0, *[s[0] for s in segs], *[s[1] for s in segs]})
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        v = complex(V(np.array([mid]))[0])
        kap2 = v + lam if mid < 0 else v - lam
        pieces.append((lo, hi, kap2, y.copy()))
        kap = complex(np.sqrt(kap2))
        h = hi - lo
        if kap == 0:
            T = np.array([[1, h], [0, 1]], dtype=complex)
        else:
            T = np.array(
                [[np.cosh(kap * h), np.sinh(kap * h) / kap], [kap * np.sinh(kap * h), np.cosh(kap * h)]]
            )
        y = T @ y
        x = hi
    y_end = y.copy()

    def psi(xq):
        xq = np.asarray(xq, dtype=float)
        out = np.empty(xq.shape, dtype=complex)
        m = xq <= x_s
        out[m] = np.exp(k * (xq[m] - x_s))
        m = xq >= x_e
        out[m] = y_end[0] * np.exp(1j * k * (xq[m] - x_e))
        for lo, hi, kap2, y0 in pieces:
            m = (xq > lo) & (xq < hi) | ((xq == lo) & (lo > x_s))
            if not np.any(m):
                continue
            kap = complex(np.sqrt(kap2))
            t = xq[m] - lo
            if kap == 0:
                out[m] = y0[0] + t * y0[1]
            else:
                out[m] = np.cosh(kap * t) * y0[0] + np.sinh(kap * t) / kap * y0[1]
        return out

    return psi


def _fd_weights(offsets, deriv):
    """Finite-difference weights for the ``deriv``-th derivative at 0."""
    s = np.asarray(offsets, dtype=float)
    n = s.size
    A = np.vander(s, n, increasing=True).T
    rhs = np.zeros(n)
    rhs[deriv] = math.factorial(deriv)
    return np.linalg.solve(A, rhs)


_CENTER2 = _fd_weights([-2, -1, 0, 1, 2], 2)


def _second_derivative(y, h):
    """Fourth-order second derivative on a uniform grid, one-sided at the ends."""
    n = y.size
    if n < 7:
        raise DomainError("segment too short for the difference stencil")
    d2 = np.empty_like(y)
    d2[2:-2] = (
        _CENTER2[0] * y[:-4] + _CENTER2[1] * y[1:-3] + _CENTER2[2] * y[2:-2]
        + _CENTER2[3] * y[3:-1] + _CENTER2[4] * y[4:]
    )
    for i in (0, 1):
        w = _fd_weights(np.arange(6) - i, 2)
        d2[i] = w @ y[:6]
        w = _fd_weights(np.arange(-5, 1) + i, 2)
        d2[n - 1 - i] = w @ y[-6:]
    return d2 / (h * h)


def _end_derivative(y, h, at_start):
    w = _fd_weights(np.arange(5), 1)
    return (w @ y[:5]) / h if at_start else -(w @ y[::-1][:5]) / h


def residual_certify(V, lam, psi, window=None, h=1e-3):
    """||sgn(x)(-psi'' + V psi) - lam psi||_2 / ||psi||_2 on a window.

    ``psi`` is a callable.  The window is cut at 0 and at the breakpoints of
    V; each piece gets a uniform grid of step about ``h`` with fourth-order
    stencils that never reach across a cut.  A jump of psi' (or a point
    interaction) at a cut contributes |c psi(b) - [psi']|^2 / h, the discrete
    L^2 mass of a delta spike.
    """
    V = as_potential(V)
    lam = complex(lam)
    if window is None:
        if isinstance(V, WignerVonNeumann):
            window = (-40.0, 40.0)
        else:
            lo, hi = V.support
            pad = 10.0
            window = (min(lo, 0.0) - pad, max(hi, 0.0) + pad)
    a, b = window
    cuts = {a, b, 0.0} if a < 0 < b else {a, b}
    deltas = {}
    if isinstance(V, Delta):
        if a < V.location < b:
            cuts.add(V.location)
        deltas[V.location] = V.amplitude
        vfun = lambda x: np.zeros(np.shape(x), dtype=complex)  # noqa: E731
    else:
        cuts |= {float(t) for t in np.atleast_1d(V.breakpoints) if a < t < b}
        vfun = V
    cuts = sorted(cuts)
    num = 0.0
    den = 0.0
    dleft = {}
    dright = {}
    vals = {}
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        n = max(8, int(round((hi - lo) / h)))
        x = np.linspace(lo, hi, n + 1)
        hh = x[1] - x[0]
        y = np.asarray(psi(x), dtype=complex)
        d2 = _second_derivative(y, hh)
        # one-sided potential values at the cuts
        vv = vfun(np.clip(x, lo + 1e-12 * (hi - lo), hi - 1e-12 * (hi - lo)))
        sg = 1.0 if lo >= 0 else -1.0
        r = sg * (-d2 + vv * y) - lam * y
        wts = np.full(x.size, hh)
        wts[0] = wts[-1] = 0.5 * hh
        num += float(np.sum(wts * np.abs(r) ** 2))
        den += float(np.sum(wts * np.abs(y) ** 2))
        dright[lo] = _end_derivative(y, hh, True)
        dleft[hi] = _end_derivative(y, hh, False)
        vals[lo] = y[0]
        vals[hi] = y[-1]
    for c in cuts[1:-1]:
        jump = dright[c] - dleft[c]
        J = deltas.get(c, 0.0) * vals[c] - jump
        num += abs(J) ** 2 / h
    if den <= 1e-300:
        raise DomainError("psi vanishes on the window")
    return math.sqrt(num / den)
