"""Nystrom discretisation of the Birman-Schwinger operator

    K(x, y) = |V(x)|^{1/2} G_lam(x, y) [sgn(y)] V_{1/2}(y),   V_{1/2} = |V|^{1/2} sgn V.

The bracketed factor is present in the *signed* kernel, whose Fredholm
determinant det(I + K) vanishes exactly at eigenvalues of
sgn(x)(-d^2/dx^2 + V).  Norm bounds treat both variants alike, since the
two kernels agree in modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .potentials import Delta, PiecewiseConstant, as_potential, p_norm
from .quadrature import QuadratureScheme, gauss_panels
from .spectral_core import ALPHA, ComplexEnergy, DomainError, green_kernel

DEFAULT_OP_NORM_TOL = 1e-10


class ConvergenceError(RuntimeError):
    def __init__(self, message, iterate, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.iterate = iterate
        self.residual = residual


class SingularDeterminant(ArithmeticError):
    """I + K is numerically singular: lam is (numerically) an eigenvalue."""


@dataclass
class DiscretizedOperator:
    """``matrix`` is w^{1/2} K w^{1/2}, used for norms.  ``corrected`` is a
    matrix with the same size whose diagonal panel blocks integrate the
    |x - y| kink of G exactly against the local interpolant; it is similar
    to the product-integration Nystrom matrix and gives a spectrally
    accurate determinant.
    """

    scheme: QuadratureScheme
    matrix: np.ndarray
    corrected: np.ndarray
    signed: bool
    energy: ComplexEnergy

    @property
    def dim(self):
        return self.matrix.shape[0]


def default_scheme(V, energy, panels_per_unit=None, order=10):
    V = as_potential(V)
    if not isinstance(V, PiecewiseConstant):
        raise DomainError("Nystrom assembly needs a compactly supported piecewise potential")
    if panels_per_unit is None:
        panels_per_unit = max(8.0, 4.0 * abs(energy.sqrt_lam))
    return gauss_panels(V.breakpoints, panels_per_unit=panels_per_unit, order=order)


def _half_powers(V, x):
    v = V(x)
    mod = np.abs(v)
    root = np.sqrt(mod)
    phase = np.divide(v, mod, out=np.zeros_like(v), where=mod > 0)
    return root, root * phase


def _kink_blocks(energy, scheme):
    """Per-panel product-integration replacement of G(x_i, y_j) w_j."""
    k = energy.sqrt_lam
    pref = 1.0 / (2 * ALPHA * k)
    S = scheme.cumulative_weights()
    m = scheme.order
    blocks = []
    for p in range(scheme.n_panels):
        sl = slice(p * m, (p + 1) * m)
        x = scheme.nodes[sl]
        w = scheme.weights[sl]
        Sp = S[sl]
        d = x[:, None] - x[None, :]
        if scheme.edges[p] >= 0:
            smooth = ALPHA * np.exp(1j * k * (x[:, None] + x[None, :]))
            kink = np.conj(ALPHA) * (
                Sp * np.exp(1j * k * d) + (w[None, :] - Sp) * np.exp(-1j * k * d)
            )
        else:
            smooth = -np.conj(ALPHA) * np.exp(k * (x[:, None] + x[None, :]))
            kink = -ALPHA * (Sp * np.exp(-k * d) + (w[None, :] - Sp) * np.exp(k * d))
        blocks.append((sl, pref * (smooth * w[None, :] + kink)))
    return blocks


def assemble(V, energy: ComplexEnergy, scheme: QuadratureScheme | None = None, signed=True):
    """Discretised Birman-Schwinger operator on the nodes of ``scheme``."""
    V = as_potential(V)
    if isinstance(V, Delta):
        raise DomainError("point interactions use the scalar closed form (see delta_operator)")
    if energy.lam.imag < 0:
        raise DomainError("assemble needs lam in the closed upper half-plane")
    if scheme is None:
        scheme = default_scheme(V, energy)
    x, w = scheme.nodes, scheme.weights
    left, right = _half_powers(V, x)
    if signed:
        right = right * np.sign(x)
    G = green_kernel(energy, x[:, None], x[None, :])
    sw = np.sqrt(w)
    matrix = (sw * left)[:, None] * G * (right * sw)[None, :]

    # product integration: A_ij acts on nodal values, corrected = W^{1/2} A W^{-1/2}
    A = G * w[None, :]
    for sl, block in _kink_blocks(energy, scheme):
        A[sl, sl] = block
    A = left[:, None] * A * right[None, :]
    corrected = sw[:, None] * A / sw[None, :]
    return DiscretizedOperator(scheme, matrix, corrected, signed, energy)


def delta_operator(V: Delta, energy: ComplexEnergy, signed=True):
    """The 1x1 Birman-Schwinger operator of c delta(x - x0)."""
    from .spectral_core import signed_diagonal

    if signed:
        val = V.amplitude * complex(signed_diagonal(energy, V.location))
    else:
        val = V.amplitude * complex(green_kernel(energy, V.location, V.location))
    m = np.array([[val]], dtype=complex)
    sch = QuadratureScheme(
        np.array([V.location]), np.array([1.0]), np.array([V.location, V.location]), np.array([0]), 1
    )
    return DiscretizedOperator(sch, m, m.copy(), signed, energy)


def hs_norm(op: DiscretizedOperator) -> float:
    return float(np.linalg.norm(op.matrix, "fro"))


def op_norm(op: DiscretizedOperator, tol=DEFAULT_OP_NORM_TOL, max_iter=20000) -> float:
    """Largest singular value by power iteration on M^H M from the all-ones vector."""
    if not tol > 0:
        raise DomainError("tol must be positive")
    M = op.matrix
    n = M.shape[1]
    if n == 0 or not np.any(M):
        return 0.0
    v = np.ones(n, dtype=complex) / math.sqrt(n)
    sigma_old = 0.0
    res = math.inf
    for _ in range(max_iter):
        u = M @ v
        z = M.conj().T @ u
        sigma2 = float(np.vdot(v, z).real)
        nz = np.linalg.norm(z)
        if nz == 0:
            return 0.0
        res = float(np.linalg.norm(z - sigma2 * v)) / max(sigma2, 1e-300)
        v = z / nz
        sigma = math.sqrt(max(sigma2, 0.0))
        if abs(sigma - sigma_old) <= tol * sigma and res <= math.sqrt(tol):
            return float(np.linalg.norm(M @ v))
        sigma_old = sigma
    raise ConvergenceError("power iteration did not converge", v, res)


def log_det(op: DiscretizedOperator, allow_unsigned=False) -> complex:
    """log det(I + K) from a pivoted LU factorisation of the corrected matrix."""
    if not (op.signed or allow_unsigned):
        raise DomainError("the determinant characterisation uses the signed kernel")
    n = op.dim
    I_plus = np.eye(n, dtype=complex) + op.corrected
    lu, piv = scipy.linalg.lu_factor(I_plus, check_finite=True)
    diag = np.diag(lu)
    if np.any(diag == 0):
        raise SingularDeterminant("I + K is singular")
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    return complex(np.sum(np.log(diag.astype(complex))) + (1j * math.pi if swaps % 2 else 0))


def det(op: DiscretizedOperator) -> complex:
    try:
        return complex(np.exp(log_det(op)))
    except SingularDeterminant:
        return 0j


def hs_bound(V, energy: ComplexEnergy) -> float:
    """sqrt((1/2)(1/|lam| + |Re lam|/|lam|^2)) ||V||_1."""
    lam = energy.lam
    r = abs(lam)
    return math.sqrt(0.5 * (1 / r + abs(lam.real) / r**2)) * p_norm(V, 1).norm


def schur_bound(V, energy: ComplexEnergy, p: float) -> float:
    """max of the two half-line Schur-test expressions in ||V||_{p,+-}."""
    p = float(p)
    if not 1 < p < math.inf:
        raise DomainError("schur_bound needs 1 < p < inf")
    if energy.lam.imag <= 0:
        raise DomainError("schur_bound needs Im lam > 0")
    q = p / (p - 1)
    nr = p_norm(V, p)
    a, b = energy.a, energy.b
    pre = 1 / (q ** (1 / q) * math.sqrt(abs(energy.lam)))
    ra, rb = a ** (1 / q), b ** (1 / q)
    right = pre * (nr.norm_minus / (math.sqrt(2) * ra) + nr.norm_plus / rb)
    left = pre * (nr.norm_minus / ra + nr.norm_plus / (math.sqrt(2) * rb))
    return max(right, left)


def leading_rank_one(V, energy: ComplexEnergy, scheme=None, signed=False):
    """Small-lam leading part of the Birman-Schwinger operator.

    As lam -> 0, G_lam(x, y) -> sgn(y)/(2 alpha sqrt(lam)), so the unsigned
    kernel tends to |V|^{1/2}(x) sgn(y) V_{1/2}(y)/(2 alpha sqrt(lam)) (trace
    v_+ - v_-) and the signed one to |V|^{1/2}(x) V_{1/2}(y)/(2 alpha sqrt(lam))
    (trace v_+ + v_-).  Returned as a DiscretizedOperator.
    """
    V = as_potential(V)
    if scheme is None:
        scheme = default_scheme(V, energy)
    x, w = scheme.nodes, scheme.weights
    left, right = _half_powers(V, x)
    if not signed:
        right = right * np.sign(x)
    sw = np.sqrt(w)
    m = np.outer(sw * left, right * sw) / (2 * ALPHA * energy.sqrt_lam)
    return DiscretizedOperator(scheme, m, m.copy(), signed, energy)
