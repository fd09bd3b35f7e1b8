"""Potentials: point interactions, piecewise-constant wells and two
extremal families (a Wigner-von Neumann type generator with an embedded
eigenvalue and a long shallow complex square well).

Every potential supports ``V(x)`` on arrays, ``reflected()`` (x -> -x) and
``scaled(rho)`` (x -> rho^2 V(rho x)).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .contour import Circle, winding
from .quadrature import gauss_panels
from .spectral_core import DomainError


class PotentialFileError(ValueError):
    """A potential file could not be parsed; the message names line or field."""


# --------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class Delta:
    """c * delta(x - x0)."""

    amplitude: complex
    location: float
    kind = "delta"

    def __post_init__(self):
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "location", float(self.location))
        if not math.isfinite(self.location):
            raise DomainError("delta location must be finite")

    @property
    def support(self):
        return (self.location, self.location)

    @property
    def breakpoints(self):
        return np.array([self.location])

    def __call__(self, x):
        return np.zeros(np.shape(x), dtype=complex)

    def reflected(self):
        return Delta(self.amplitude, -self.location)

    def scaled(self, rho):
        return Delta(rho * self.amplitude, self.location / rho)


@dataclass(frozen=True)
class PiecewiseConstant:
    """V = values[i] on (breakpoints[i], breakpoints[i+1]), zero outside."""

    breakpoints: tuple
    values: tuple
    kind = "piecewise"

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        vals = tuple(complex(v) for v in self.values)
        if len(bp) < 2:
            raise DomainError("need at least two breakpoints")
        if len(vals) != len(bp) - 1:
            raise DomainError("need exactly one value per interval between breakpoints")
        if not all(math.isfinite(b) for b in bp):
            raise DomainError("breakpoints must be finite")
        if any(b1 <= b0 for b0, b1 in zip(bp[:-1], bp[1:])):
            raise DomainError("breakpoints must be strictly ascending")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)

    @property
    def support(self):
        return (self.breakpoints[0], self.breakpoints[-1])

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        bp = np.asarray(self.breakpoints)
        idx = np.searchsorted(bp, x, side="right") - 1
        inside = (idx >= 0) & (idx < len(self.values))
        vals = np.append(np.asarray(self.values), 0.0)
        return np.where(inside, vals[np.where(inside, idx, -1)], 0.0).astype(complex)

    def segments(self):
        """(lo, hi, value) triples with any interval straddling 0 split there."""
        out = []
        for lo, hi, v in zip(self.breakpoints[:-1], self.breakpoints[1:], self.values):
            if lo < 0.0 < hi:
                out += [(lo, 0.0, v), (0.0, hi, v)]
            else:
                out.append((lo, hi, v))
        return out

    def reflected(self):
        return PiecewiseConstant(
            tuple(-b for b in reversed(self.breakpoints)), tuple(reversed(self.values))
        )

    def scaled(self, rho):
        return PiecewiseConstant(
            tuple(b / rho for b in self.breakpoints), tuple(rho * rho * v for v in self.values)
        )


def zero_potential():
    return PiecewiseConstant((0.0, 1.0), (0.0,))


@dataclass(frozen=True)
class WignerVonNeumann:
    """Real potential V_n with the embedded eigenvalue ``lambda0``.

    The base profile (``rho = 1``, ``flip = False``) is built from

        g(x) = int_0^x sin^2(sqrt(lambda0) t + pi/4) dt,  chi = 1/(n^2 + g^2),
        V = 2 u' chi' / (u chi) + chi'' / chi,

    where u is the free solution e^{sqrt(lambda0) x} on x < 0 and
    sqrt(2) sin(sqrt(lambda0) x + pi/4) on x > 0.  ``psi = u chi`` then solves
    sgn(x)(-psi'' + V psi) = lambda0 psi.  ``rho`` and ``flip`` record the
    scaling and reflection maps applied afterwards.
    """

    lambda0: float
    n: int
    rho: float = 1.0
    flip: bool = False
    kind = "wvn"

    def __post_init__(self):
        if not self.lambda0 > 0:
            raise DomainError("lambda0 must be positive")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError("n must be a positive integer")
        if not self.rho > 0:
            raise DomainError("rho must be positive")

    @property
    def support(self):
        return None

    @property
    def breakpoints(self):
        return np.array([0.0])

    @property
    def eigenvalue(self):
        """The embedded eigenvalue of this (possibly scaled/reflected) potential."""
        lam = self.rho**2 * self.lambda0
        return -lam if self.flip else lam

    @property
    def period(self):
        """Period of the oscillation of V in the physical variable."""
        return math.pi / (math.sqrt(self.lambda0) * self.rho)

    def _t(self, x):
        x = np.asarray(x, dtype=float)
        return (-x if self.flip else x) * self.rho

    def g(self, t):
        k = math.sqrt(self.lambda0)
        t = np.asarray(t, dtype=float)
        return t / 2 + (1 - np.cos(2 * k * t)) / (4 * k)

    def chi(self, t):
        return 1.0 / (self.n**2 + self.g(t) ** 2)

    def _base_V(self, t):
        k = math.sqrt(self.lambda0)
        g = self.g(t)
        gp = np.sin(k * t + math.pi / 4) ** 2
        gpp = k * np.cos(2 * k * t)
        # g' u'/u with the zeros of u cancelled analytically
        gpu = np.where(t >= 0, 0.5 * k * np.cos(2 * k * t), k * gp)
        d = self.n**2 + g * g
        return 8 * g * g * gp * gp / d**2 - 2 * (gp * gp + g * gpp) / d - 4 * g * gpu / d

    def _base_u(self, t):
        k = math.sqrt(self.lambda0)
        t = np.asarray(t, dtype=float)
        return np.where(
            t <= 0, np.exp(k * np.minimum(t, 0.0)), math.sqrt(2) * np.sin(k * t + math.pi / 4)
        )

    def __call__(self, x):
        return (self.rho**2 * self._base_V(self._t(x))).astype(complex)

    def psi(self, x):
        """Eigenfunction (normalised by psi(0) = 1/n^2)."""
        t = self._t(x)
        return (self._base_u(t) * self.chi(t)).astype(complex)

    def reflected(self):
        return WignerVonNeumann(self.lambda0, self.n, self.rho, not self.flip)

    def scaled(self, rho):
        return WignerVonNeumann(self.lambda0, self.n, self.rho * rho, self.flip)

    @cached_property
    def decay_constant(self):
        """Measured sup_x |V(x)| (n + |x|) over |x| <= 1000."""
        x = np.linspace(-1000.0, 1000.0, 2_000_001)
        return float(np.max(np.abs(self(x)) * (self.n + np.abs(x))))

    @property
    def growth_constant(self):
        """c with |g(t)| >= c|t| for |t| >= 2/sqrt(lambda0)."""
        # g(t) >= t/2 for t > 0 and |g(t)| >= |t|/2 - 1/(2 sqrt(lambda0)) for t < 0
        return 0.25


@dataclass(frozen=True)
class SquareWellDesign:
    """A complex square well on [0, R] carrying an eigenvalue close to
    mu (1 + 2 i eps).

    ``k``, ``R``, ``theta``, ``A`` and ``B`` refer to the unscaled (mu = 1)
    problem; ``V0``, ``lam_pred`` and ``potential`` include the scaling by
    sqrt(mu).
    """

    eps: float
    mu: float
    k: complex
    R: float
    theta: float
    V0: complex
    A: complex
    B: complex
    lam_pred: complex
    rouche_C: float
    omega: complex
    kind = "square_well"

    @property
    def rho(self):
        return math.sqrt(self.mu)

    @property
    def potential(self):
        return PiecewiseConstant((0.0, self.R / self.rho), (self.V0,))

    @property
    def rouche_radius(self):
        return self.rouche_C * self.eps**2

    def phase_residual(self):
        """|i e^{-2iR} + i|, zero for the selected theta."""
        return abs(1j * np.exp(-2j * self.R) + 1j)

    def __call__(self, x):
        return self.potential(x)

    @property
    def support(self):
        return self.potential.support

    @property
    def breakpoints(self):
        return np.asarray(self.potential.breakpoints)

    def reflected(self):
        return self.potential.reflected()

    def scaled(self, rho):
        return self.potential.scaled(rho)


def as_potential(V):
    return V.potential if isinstance(V, SquareWellDesign) else V


# --------------------------------------------------------------------------
# norms and moments


@dataclass(frozen=True)
class NormReport:
    p: float
    norm: float
    norm_plus: float
    norm_minus: float
    sup_norm: float


@dataclass(frozen=True)
class MomentReport:
    v_plus: complex
    v_minus: complex
    v_sgn: complex


def _combine(parts_p, p):
    if math.isinf(p):
        return max(parts_p, default=0.0)
    return float(sum(parts_p)) ** (1 / p)


def _pc_norms(V, p):
    plus, minus, sup = [], [], 0.0
    for lo, hi, v in V.segments():
        a = abs(v)
        sup = max(sup, a)
        part = a if math.isinf(p) else (a**p) * (hi - lo)
        (plus if lo >= 0 else minus).append(part)
    return NormReport(p, _combine(plus + minus, p), _combine(plus, p), _combine(minus, p), sup)


# WvN norms: window quadrature plus the asymptotic tail.  Beyond the window
# |V(x)|^p |x|^p is periodic up to O(1/x), so the tail is M_p T^{1-p}/(p-1).
WVN_WINDOW_PERIODS = 400
WVN_TAIL_PERIODS = 40


def _wvn_half_norm(V, p, side):
    P = V.period
    T = P * (WVN_WINDOW_PERIODS + math.ceil(V.n / V.rho / P) * 8)
    edges = (0.0, T) if side > 0 else (-T, 0.0)
    sch = gauss_panels(edges, panels_per_unit=8.0 / P)
    vals = np.abs(V(sch.nodes))
    if math.isinf(p):
        return float(vals.max())
    body = float(np.sum(sch.weights * vals**p))
    if p <= 1:
        return math.inf
    lo, hi = (T - WVN_TAIL_PERIODS * P, T) if side > 0 else (-T, -T + WVN_TAIL_PERIODS * P)
    tail_sch = gauss_panels((lo, hi), panels_per_unit=8.0 / P)
    xt = tail_sch.nodes
    M = float(np.sum(tail_sch.weights * np.abs(V(xt)) ** p * np.abs(xt) ** p)) / (hi - lo)
    return body + M * T ** (1 - p) / (p - 1)


def _wvn_norms(V, p):
    if math.isinf(p):
        a, b = _wvn_half_norm(V, p, 1), _wvn_half_norm(V, p, -1)
        return NormReport(p, max(a, b), a, b, max(a, b))
    if p <= 1:
        return NormReport(p, math.inf, math.inf, math.inf, _wvn_norms(V, math.inf).sup_norm)
    a, b = _wvn_half_norm(V, p, 1), _wvn_half_norm(V, p, -1)
    sup = _wvn_norms(V, math.inf).sup_norm
    return NormReport(p, (a + b) ** (1 / p), a ** (1 / p), b ** (1 / p), sup)


def p_norm(V, p) -> NormReport:
    """||V||_p and its half-line parts ||V||_{p,+}, ||V||_{p,-}.

    A point interaction c delta counts as |c| in L^1 (and is not in L^p
    for p > 1).
    """
    p = float(p)
    if not p >= 1:
        raise DomainError("p must be >= 1")
    V = as_potential(V)
    if isinstance(V, Delta):
        c = abs(V.amplitude)
        val = c if p == 1 else (0.0 if c == 0 else math.inf)
        pos = V.location >= 0
        return NormReport(p, val, val if pos else 0.0, 0.0 if pos else val, math.inf if c else 0.0)
    if isinstance(V, PiecewiseConstant):
        return _pc_norms(V, p)
    if isinstance(V, WignerVonNeumann):
        return _wvn_norms(V, p)
    raise DomainError(f"unsupported potential {type(V).__name__}")


def moments(V) -> MomentReport:
    """v_+ = int_{x>0} V, v_- = int_{x<0} V and v_sgn = v_+ - v_-."""
    V = as_potential(V)
    if isinstance(V, Delta):
        plus = V.amplitude if V.location > 0 else 0j
        minus = V.amplitude if V.location < 0 else 0j
        if V.location == 0:
            raise DomainError("the sign split of a delta at the origin is undefined")
    elif isinstance(V, PiecewiseConstant):
        plus = minus = 0j
        for lo, hi, v in V.segments():
            if lo >= 0:
                plus += v * (hi - lo)
            else:
                minus += v * (hi - lo)
    else:
        raise DomainError("moments need an integrable potential")
    return MomentReport(plus, minus, plus - minus)


def scale(V, rho):
    """V_rho(x) = rho^2 V(rho x); eigenvalues scale by rho^2."""
    rho = float(rho)
    if not rho > 0:
        raise DomainError("rho must be positive")
    return as_potential(V).scaled(rho)


def exp_weighted_l1(V, eps) -> float:
    """int e^{eps|x|} |V(x)| dx."""
    eps = float(eps)
    if not eps > 0:
        raise DomainError("eps must be positive")
    V = as_potential(V)
    if isinstance(V, Delta):
        return abs(V.amplitude) * math.exp(eps * abs(V.location))
    if isinstance(V, PiecewiseConstant):
        total = 0.0
        for lo, hi, v in V.segments():
            if lo >= 0:
                total += abs(v) * (math.exp(eps * hi) - math.exp(eps * lo)) / eps
            else:
                total += abs(v) * (math.exp(-eps * lo) - math.exp(-eps * hi)) / eps
        return total
    # window-growth test for potentials without compact support
    vals = []
    for T in (100.0, 200.0):
        sch = gauss_panels((-T, T), panels_per_unit=8.0)
        w = np.exp(eps * np.abs(sch.nodes)) * np.abs(V(sch.nodes))
        vals.append(float(np.sum(sch.weights * w)))
    if vals[1] > vals[0] * (1 + 1e-6):
        raise DomainError("exponentially weighted L1 norm diverges")
    return vals[1]


# --------------------------------------------------------------------------
# generators


def wigner_von_neumann(lambda0, n) -> WignerVonNeumann:
    return WignerVonNeumann(float(lambda0), int(n))


def _well_secular(eps, R, omega):
    k = -1 + 1j * eps
    s = 1 + 1j * eps + np.asarray(omega, dtype=complex)
    E = np.exp(2j * k * R)
    A = 0.5 + s / (2j * k)
    B = 0.5 - s / (2j * k)
    return s + k * (B - A * E) / (B + A * E)


def square_well(eps, mu) -> SquareWellDesign:
    """Design a square well whose eigenvalue has Re ~ mu, Im ~ 2 mu eps."""
    eps, mu = float(eps), float(mu)
    if not (0 < eps <= 0.1):
        raise DomainError("eps must lie in (0, 0.1]")
    if not mu > 0:
        raise DomainError("mu must be positive")
    k = -1 + 1j * eps
    R0 = abs(math.log(eps)) / (2 * eps)
    # to first order f(0) = 2i eps (1 + e^{-2iR}) since A/B -> i, so the
    # phase is fixed by i e^{-2iR} = -i, i.e. R = pi/2 (mod pi)
    theta = (math.pi / 2 - R0) % math.pi
    R = R0 + theta

    def f(w):
        return _well_secular(eps, R, w)

    C = 1.0
    while True:
        if winding(f, Circle(0j, C * eps**2)).count == 1:
            break
        C *= 2
        if C > 2**20:
            raise DomainError("no isolating Rouche disc found")

    w = 0j
    for _ in range(60):
        h = 1e-7 * eps**2
        d = (f(w + h) - f(w - h)) / (2 * h)
        step = f(w) / d
        w -= step
        if abs(step) < 1e-15 * max(1.0, abs(w)):
            break
    s = 1 + 1j * eps + w
    lam1 = s * s
    A = 0.5 + s / (2j * k)
    B = 0.5 - s / (2j * k)
    V0 = lam1 - k * k
    return SquareWellDesign(
        eps=eps,
        mu=mu,
        k=k,
        R=R,
        theta=theta,
        V0=mu * V0,
        A=complex(A),
        B=complex(B),
        lam_pred=complex(mu * lam1),
        rouche_C=C,
        omega=complex(w),
    )


# --------------------------------------------------------------------------
# JSON files


def _pair(value, name):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in value)
    ):
        return complex(value[0], value[1])
    raise PotentialFileError(f"field '{name}': expected [re, im]")


def _number(obj, name):
    if name not in obj:
        raise PotentialFileError(f"missing field '{name}'")
    v = obj[name]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise PotentialFileError(f"field '{name}': expected a number")
    return float(v)


def potential_from_dict(obj):
    if not isinstance(obj, dict):
        raise PotentialFileError("top level must be an object")
    variant = obj.get("variant")
    try:
        if variant == "delta":
            if "amplitude" not in obj:
                raise PotentialFileError("missing field 'amplitude'")
            return Delta(_pair(obj["amplitude"], "amplitude"), _number(obj, "location"))
        if variant == "piecewise":
            bp = obj.get("breakpoints")
            vals = obj.get("values")
            if not isinstance(bp, list):
                raise PotentialFileError("field 'breakpoints': expected a list")
            if not isinstance(vals, list):
                raise PotentialFileError("field 'values': expected a list")
            for i, b in enumerate(bp):
                if isinstance(b, bool) or not isinstance(b, (int, float)):
                    raise PotentialFileError(f"field 'breakpoints[{i}]': expected a number")
            return PiecewiseConstant(
                tuple(bp), tuple(_pair(v, f"values[{i}]") for i, v in enumerate(vals))
            )
        if variant == "wvn":
            n = _number(obj, "n")
            return wigner_von_neumann(_number(obj, "lambda0"), int(n))
        if variant == "square_well":
            return square_well(_number(obj, "eps"), _number(obj, "mu"))
    except DomainError as exc:
        raise PotentialFileError(f"variant '{variant}': {exc}") from exc
    raise PotentialFileError(f"field 'variant': unknown value {variant!r}")


def loads_potential(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PotentialFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return potential_from_dict(obj)


def load_potential(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return loads_potential(text)
    except PotentialFileError as exc:
        raise PotentialFileError(f"{path}: {exc}") from exc


def potential_to_dict(V):
    if isinstance(V, Delta):
        return {
            "variant": "delta",
            "amplitude": [V.amplitude.real, V.amplitude.imag],
            "location": V.location,
        }
    if isinstance(V, PiecewiseConstant):
        return {
            "variant": "piecewise",
            "breakpoints": list(V.breakpoints),
            "values": [[v.real, v.imag] for v in V.values],
        }
    if isinstance(V, WignerVonNeumann):
        if V.rho != 1 or V.flip:
            raise DomainError("only the base Wigner-von Neumann profile has a file form")
        return {"variant": "wvn", "lambda0": V.lambda0, "n": V.n}
    if isinstance(V, SquareWellDesign):
        return {"variant": "square_well", "eps": V.eps, "mu": V.mu}
    raise DomainError(f"unsupported potential {type(V).__name__}")


def dumps_potential(V):
    return json.dumps(potential_to_dict(V), indent=2)
