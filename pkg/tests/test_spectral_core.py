import cmath
import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar
from hypothesis import assume, given
from hypothesis import strategies as st

from indefspec.spectral_core import (
    ALPHA,
    DomainError,
    GreenParams,
    apply_free_resolvent,
    diagonal_maximizer,
    green_bound,
    green_dx,
    green_eval,
    green_kernel,
    krein_mu,
    saturation_point,
    signed_diagonal,
    sqrt_branch,
    sqrt_upper,
)
from indefspec.quadrature import gauss_panels

upper = st.builds(
    lambda r, t: r * cmath.exp(1j * t),
    st.floats(1e-2, 1e2),
    st.floats(1e-3, math.pi - 1e-3),
)
coord = st.floats(-4, 4)


def test_sqrt_branch_conventions():
    assert sqrt_upper(4).sqrt_lam == 2
    assert sqrt_upper(-4).sqrt_lam == 2j
    k = sqrt_upper(1j).sqrt_lam
    assert k == pytest.approx(cmath.exp(1j * math.pi / 4))
    z = np.array([1 - 1j, -1 - 1j])
    assert np.all(sqrt_branch(z).imag >= 0)
    with pytest.raises(DomainError):
        sqrt_upper(0)


@given(upper, coord, coord)
def test_green_solves_the_free_equation(lam, x, y):
    """sgn(x)(-G_xx) = lam G away from x = y and x = 0 (finite-difference oracle)."""
    assume(abs(x - y) > 0.05 and abs(x) > 0.05)
    E = sqrt_upper(lam)
    h = 1e-3 / max(1.0, abs(E.sqrt_lam))
    xs = x + h * np.arange(-2, 3)
    g = green_kernel(E, xs, y)
    d2 = (-g[0] + 16 * g[1] - 30 * g[2] + 16 * g[3] - g[4]) / (12 * h * h)
    assert np.sign(x) * (-d2) == pytest.approx(lam * g[2], rel=1e-5, abs=1e-6 * abs(lam * g[2]) + 1e-8)


@given(upper, coord)
def test_green_jump_conditions(lam, y):
    """G continuous in x; at x = y the derivative jumps by -sgn(y); smooth through x = 0."""
    assume(abs(y) > 1e-3)
    E = sqrt_upper(lam)
    d = 1e-9
    gl, gr = green_kernel(E, y - d, y), green_kernel(E, y + d, y)
    assert abs(gr - gl) < 1e-6 * max(1, abs(gl))
    jump = green_dx(E, y + d, y) - green_dx(E, y - d, y)
    assert jump == pytest.approx(-np.sign(y), abs=1e-5)
    # C^1 across the origin
    assert green_kernel(E, d, y) == pytest.approx(green_kernel(E, -d, y), abs=1e-6)
    assert green_dx(E, d, y) == pytest.approx(green_dx(E, -d, y), abs=1e-5)


@given(upper, coord, coord)
def test_green_bound_holds(lam, x, y):
    E = sqrt_upper(lam)
    assert abs(green_eval(GreenParams(E), x, y)) <= green_bound(E) * (1 + 1e-12)


def test_green_decays_in_both_directions():
    E = sqrt_upper(0.3 + 2j)
    far = np.array([-60.0, 60.0])
    assert np.all(np.abs(green_kernel(E, far, 0.4)) < 1e-10)


def test_signed_diagonal_continuous_at_origin():
    E = sqrt_upper(-1 + 0.5j)
    v0 = 1 / (2 * ALPHA * E.sqrt_lam)
    assert signed_diagonal(E, 1e-12) == pytest.approx(v0)
    assert signed_diagonal(E, -1e-12) == pytest.approx(v0)
    x = np.array([-0.7, 0.4])
    assert np.allclose(signed_diagonal(E, x), np.sign(x) * green_kernel(E, x, x))


def test_bound_is_attained_on_imaginary_axis():
    E = sqrt_upper(2.5j)
    assert saturation_point(E) == pytest.approx(0.0, abs=1e-12)
    assert abs(green_kernel(E, 0, 0)) == pytest.approx(green_bound(E), rel=1e-14)
    x0, ratio = diagonal_maximizer(E)
    assert ratio == pytest.approx(1.0, abs=1e-12)


@given(upper)
def test_diagonal_maximizer_matches_brute_force(lam):
    E = sqrt_upper(lam)
    assume(E.a > 1e-3 and E.b > 1e-3)
    x0, ratio = diagonal_maximizer(E)
    scale = 1 / min(E.a, E.b)
    xs = np.linspace(-3 * scale, 3 * scale, 200001)
    prof = np.abs(green_kernel(E, xs, xs))
    i = int(np.argmax(prof))
    h = xs[1] - xs[0]
    # polish the grid maximum
    opt = minimize_scalar(
        lambda t: -abs(complex(green_kernel(E, t, t))), bounds=(xs[i] - h, xs[i] + h),
        method="bounded", options={"xatol": 1e-13},
    )
    brute = max(prof[i], -opt.fun) / green_bound(E)
    assert ratio == pytest.approx(brute, rel=1e-6)
    assert ratio <= 1 + 1e-12
    assert abs(green_kernel(E, x0, x0)) / green_bound(E) == pytest.approx(ratio, rel=1e-10)


def test_resolvent_inverts_the_operator():
    """u = R f solves sgn(x)(-u'') - lam u = f (checked by differences)."""
    E = sqrt_upper(0.7 + 1.3j)
    f = lambda x: np.exp(-4 * (x - 0.2) ** 2)  # noqa: E731
    h = 1e-3
    x = np.array([-0.6, 0.5, 1.1]) + h * np.arange(-2, 3)[:, None]

    def u_at(t):
        # the kink of G(t, .) sits on a panel edge
        src = gauss_panels((-4.0, t, 4.5), panels_per_unit=8)
        return apply_free_resolvent(E, f(src.nodes), src, np.array([t]))[0]

    u = np.vectorize(u_at, otypes=[complex])(x)
    d2 = (-u[0] + 16 * u[1] - 30 * u[2] + 16 * u[3] - u[4]) / (12 * h * h)
    lhs = np.sign(x[2]) * (-d2) - E.lam * u[2]
    assert np.allclose(lhs, f(x[2]), atol=1e-6)


def test_krein_components():
    E = sqrt_upper(1 + 1j)
    kc = krein_mu(E)
    assert kc.resolvent_norm_bound == pytest.approx(2.0)
    assert kc.sqrt_neg_lambda == pytest.approx(sqrt_upper(-1 - 1j).sqrt_lam)
    assert krein_mu(sqrt_upper(3j)).mu == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(DomainError):
        krein_mu(sqrt_upper(2.0))


def test_lower_half_plane_rejected():
    E = sqrt_upper(1 + 1j)
    bad = type(E)(1 - 1j, E.sqrt_lam)
    with pytest.raises(DomainError):
        green_kernel(bad, 0, 0)
