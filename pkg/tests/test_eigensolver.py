import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp
from scipy.optimize import newton as secant

from indefspec.contour import ContourSpec, winding
from indefspec.eigensolver import (
    Method,
    eigenfunction_delta,
    eigenfunction_piecewise,
    find_all_eigenvalues,
    find_eigenvalues,
    isolating_disc,
    residual_certify,
    secular_delta,
    secular_function,
    weak_coupling_predict,
)
from indefspec.potentials import Delta, PiecewiseConstant, scale, zero_potential
from indefspec.spectral_core import DomainError

WELL = PiecewiseConstant((-0.7, 0.3, 1.2), (-3 + 2j, -2 - 1.5j))
EXPECTED = (-1.0809086525 - 2.8839608272j, 0.0585849645 - 0.0377150516j)


def shoot(V, lam):
    """Mismatch of the decaying solutions, by direct ODE integration."""
    lam = complex(lam)
    kl = cmath.sqrt(lam)  # Re > 0: e^{kl x} decays as x -> -inf
    kr = cmath.sqrt(-lam)  # e^{-kr x} decays as x -> +inf
    xs = min(V.breakpoints[0], 0.0)
    xe = max(V.breakpoints[-1], 0.0)
    cuts = sorted({xs, xe, 0.0, *V.breakpoints})
    y = np.array([1.0, kl], dtype=complex)
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        mid = 0.5 * (lo + hi)
        q = complex(V(np.array([mid]))[0]) + (lam if mid < 0 else -lam)
        sol = solve_ivp(lambda t, u, q=q: [u[1], q * u[0]], (lo, hi), y, rtol=1e-12, atol=1e-14)
        y = sol.y[:, -1]
    return (y[1] + kr * y[0]) / math.hypot(abs(y[0]), abs(y[1]))


def test_two_panel_well_against_ode_oracle():
    found = find_all_eigenvalues(WELL, 12, 6)
    assert [r.certified for r in found] == [True, True]
    for r, ref in zip(sorted(found, key=lambda r: r.lam.real), EXPECTED):
        assert r.lam == pytest.approx(ref, abs=1e-9)
        z = secant(lambda l: shoot(WELL, l), r.lam, tol=1e-13)
        assert abs(z - r.lam) < 1e-9


def test_methods_agree():
    a = find_eigenvalues(WELL, ContourSpec(-3, 3, -4, -0.01), method=Method.TRANSFER)
    b = find_eigenvalues(WELL, ContourSpec(-3, 3, -4, -0.01), method=Method.DETERMINANT)
    assert len(a) == len(b) == 2
    for x, y in zip(a, b):
        assert abs(x.lam - y.lam) < 1e-7


def test_reflection_consistency():
    down = find_eigenvalues(WELL, ContourSpec(-3, 3, -4, -0.01))
    up = find_eigenvalues(WELL.reflected(), ContourSpec(-3, 3, 0.01, 4))
    key = lambda z: (z.real, z.imag)  # noqa: E731
    assert sorted((-r.lam for r in up), key=key) == sorted((r.lam for r in down), key=key)


def test_no_eigenvalues_in_upper_half():
    assert find_eigenvalues(WELL, ContourSpec(-12, 12, 0.024, 6)) == []


def test_free_operator_has_no_eigenvalues():
    assert find_all_eigenvalues(zero_potential(), 5, 5) == []


@settings(max_examples=15)
@given(
    st.floats(-1.5, 0.5), st.floats(0.2, 1.0), st.floats(0.2, 1.0),
    st.floats(-3, 1), st.floats(-2, 2), st.floats(-3, 1), st.floats(-2, 2),
)
def test_count_matches_winding(x0, w1, w2, a, b, c, d):
    """Certified zeros in a region match the argument-principle count."""
    V = PiecewiseConstant((x0, x0 + w1, x0 + w1 + w2), (complex(a, b), complex(c, d)))
    region = ContourSpec(-6.1, 6.3, 0.05, 6.2)
    f, _ = secular_function(V)
    try:
        n = winding(f, region).count
    except Exception:
        return  # zero on the outer contour: nothing to compare
    found = find_eigenvalues(V, region)
    assert sum(r.winding_multiplicity for r in found) == n
    for r in found:
        if r.certified:
            assert abs(shoot(V, r.lam)) < 1e-6


def test_scaling_equivariance():
    rho = 2.0
    region = ContourSpec(-3, 3, -4, -0.01)
    base = [r.lam for r in find_eigenvalues(WELL, region)]
    got = [r.lam for r in find_eigenvalues(scale(WELL, rho), region.scaled(rho**2))]
    assert len(base) == len(got)
    for z, w in zip(sorted(base, key=abs), sorted(got, key=abs)):
        assert abs(w - rho**2 * z) <= 1e-6 * abs(w)


@pytest.mark.parametrize("c", [-0.5, -1.0, -2.5])
def test_point_interaction_at_origin(c):
    """c delta at 0 (c < 0) has eigenvalues +-i c^2 / 2 (the potential is even)."""
    V = Delta(complex(c), 0.0)
    res = find_all_eigenvalues(V, 2 * c * c, 2 * c * c)
    assert len(res) == 2
    up = [r for r in res if r.lam.imag > 0]
    assert up[0].lam == pytest.approx(0.5j * c * c, abs=1e-10)
    assert up[0].method is Method.DELTA
    assert sum(r.lam for r in res) == pytest.approx(0, abs=1e-12)
    assert residual_certify(V, up[0].lam, eigenfunction_delta(V, up[0].lam), h=1e-3) < 1e-6


def test_secular_delta_vectorised():
    z = np.array([0.5j, 1 + 1j])
    v = secular_delta(z, -1.0, 0.0)
    assert v.shape == (2,)
    assert v[0] == pytest.approx(0, abs=1e-14)


def test_piecewise_eigenfunction_residual():
    lam = find_eigenvalues(WELL.reflected(), ContourSpec(-3, 3, 0.01, 4))[0].lam
    V = WELL.reflected()
    psi = eigenfunction_piecewise(V, lam)
    r = residual_certify(V, lam, psi, h=1e-3)
    assert r < 1e-6
    assert residual_certify(V, lam + 0.1, psi, h=1e-3) == pytest.approx(0.1, rel=1e-3)


def test_residual_of_plane_wave():
    V = zero_potential()
    psi = lambda x: np.where(np.asarray(x) >= 0, np.cos(2 * np.asarray(x)), np.cosh(2 * np.asarray(x)))  # noqa: E731
    # cos solves -psi'' = 4 psi on x > 0; cosh solves psi'' = 4 psi on x < 0
    assert residual_certify(V, 4.0, psi, window=(0.1, 6.0)) < 1e-6
    assert residual_certify(V, 4.0, psi, window=(-3.0, -0.1)) < 1e-6
    with pytest.raises(DomainError):
        residual_certify(V, 4.0, lambda x: np.zeros_like(x), window=(0.1, 1.0))


def test_weak_coupling_prediction():
    V = PiecewiseConstant((0.0, 1.0), (-1.0,))
    assert weak_coupling_predict(V, 0.1) == pytest.approx(0.005j)
    with pytest.raises(DomainError, match="Re"):
        weak_coupling_predict(PiecewiseConstant((-1.0, 0.0, 1.0), (1.0, -1.0)), 0.1)
    with pytest.raises(DomainError, match="Re\\(v\\) \\+ Im\\(v\\)"):
        weak_coupling_predict(PiecewiseConstant((0.0, 1.0), (1.0,)), 0.1)


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(1e-3, 1))
def test_weak_coupling_prediction_in_upper_half_plane(a, b, eps):
    V = PiecewiseConstant((0.0, 1.0), (complex(a, b),))
    if a + b < 0 and a < b:
        lam = weak_coupling_predict(V, eps)
        assert lam.imag > 0
        assert (cmath.sqrt(lam) * (1 if lam.imag >= 0 else -1)).imag > 0
    else:
        with pytest.raises(DomainError):
            weak_coupling_predict(V, eps)


def test_weak_coupling_isolating_disc():
    eps = 0.05
    V = PiecewiseConstant((0.0, 1.0), (-eps,))
    pred = weak_coupling_predict(PiecewiseConstant((0.0, 1.0), (-1.0,)), eps)
    f, _ = secular_function(V)
    r = isolating_disc(f, pred, abs(pred) / 2)
    lam = find_eigenvalues(V, ContourSpec(-abs(pred), abs(pred), 0.1 * abs(pred), 2 * abs(pred)))[0].lam
    assert abs(lam - pred) < r


def test_region_too_close_to_axis():
    with pytest.raises(DomainError):
        find_eigenvalues(WELL, ContourSpec(-5, 5, 1e-4, 5))
