import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import brentq, minimize_scalar

from indefspec.enclosures import (
    BoundId,
    EnclosureSpec,
    boundary_radius,
    count_bound,
    delta_reachable_radius,
    lieb_thirring_sum,
    margin,
    specs_for,
    trace_curve,
)
from indefspec.potentials import Delta, PiecewiseConstant
from indefspec.spectral_core import DomainError

SYMMETRIC = [BoundId.BST_12, BoundId.L1_14, BoundId.IMAG_L1_15, BoundId.LP_16, BoundId.IMAG_LP_18, BoundId.LINF]
nonreal = st.builds(
    lambda r, t: r * cmath.exp(1j * t), st.floats(1e-3, 1e3), st.floats(1e-3, math.pi - 1e-3)
)


def spec(b, p=2.0, q=1.3):
    if b in (BoundId.BST_12, BoundId.L1_14, BoundId.IMAG_L1_15):
        p = 1.0
    if b is BoundId.LINF:
        p = math.inf
    return EnclosureSpec(b, p, q)


def test_margin_examples():
    l1 = EnclosureSpec(BoundId.L1_14, 1, 1.0)
    assert margin(l1, 0.75 * cmath.exp(1j * math.pi / 3)).value == pytest.approx(0, abs=1e-12)
    assert margin(l1, 10j).value < 0
    im = EnclosureSpec(BoundId.IMAG_L1_15, 1, 1.0)
    assert margin(im, 0.3 + 3 * math.sqrt(3) / 8 * 1j).value == pytest.approx(0, abs=1e-15)
    assert margin(EnclosureSpec(BoundId.BST_12, 1, 1.0), 1j).value == pytest.approx(0)
    assert margin(EnclosureSpec(BoundId.LINF, math.inf, 0.5), 1j).value == pytest.approx(0)


def test_spec_validation():
    with pytest.raises(DomainError):
        EnclosureSpec(BoundId.SPLIT_19, 2.0, q=1.0)
    with pytest.raises(DomainError):
        EnclosureSpec(BoundId.LP_16, 1.0, q=1.0)
    with pytest.raises(DomainError):
        EnclosureSpec(BoundId.L1_14, 1.0)


@given(nonreal, st.sampled_from(SYMMETRIC))
def test_four_fold_symmetry(lam, b):
    s = spec(b)
    m = margin(s, lam).value
    for w in (lam.conjugate(), -lam, -lam.conjugate()):
        assert margin(s, w).value == pytest.approx(m, rel=1e-12, abs=1e-12)


@given(nonreal, st.floats(1.1, 5))
def test_split_bound_symmetries(lam, p):
    s = EnclosureSpec(BoundId.SPLIT_19, p, 2.0, 1.1, 0.7)
    swapped = EnclosureSpec(BoundId.SPLIT_19, p, 2.0, 0.7, 1.1)
    m = margin(s, lam).value
    assert margin(s, lam.conjugate()).value == pytest.approx(m, rel=1e-12, abs=1e-12)
    # lam -> -lam exchanges the half-lines
    assert margin(swapped, -lam).value == pytest.approx(m, rel=1e-12, abs=1e-12)
    assert margin(s, 2.0).value == math.inf


@given(nonreal, st.sampled_from(SYMMETRIC), st.floats(0.1, 10))
def test_scale_invariance_of_sign(lam, b, rho):
    s = spec(b)
    m = margin(s, lam).value
    ms = margin(s.scaled(rho), rho**2 * lam).value
    if abs(m) > 1e-9 * (1 + abs(lam)):
        assert np.sign(m) == np.sign(ms)


@given(st.floats(0.02, math.pi - 0.02), st.floats(1.05, 6), st.floats(0.1, 5))
def test_lp_radius_matches_root_finder(theta, p, q):
    r = boundary_radius(BoundId.LP_16, p, q, theta)
    s = EnclosureSpec(BoundId.LP_16, p, q)
    g = lambda t: margin(s, t * cmath.exp(1j * theta)).value  # noqa: E731
    ref = brentq(g, 1e-12 * q * q, 1e6 * q * q, xtol=1e-14, rtol=1e-14)
    assert r == pytest.approx(ref, rel=1e-10)


def test_radius_examples():
    assert boundary_radius("l1", 1, 1.0, math.pi / 2) == pytest.approx(0.5)
    assert boundary_radius("l1", 1, 1.0, 1e-9) == pytest.approx(1.0)
    assert boundary_radius("bst", 1, 1.0, 0.3) == 1.0
    assert boundary_radius("lp", 2.0, 1.0, 0.0) == math.inf
    with pytest.raises(DomainError):
        boundary_radius(BoundId.IMAG_L1_15, 1, 1.0, 0.3)


@pytest.mark.parametrize("theta", np.linspace(0.05, math.pi - 0.05, 9))
def test_lp_radius_tends_to_l1(theta):
    gaps = [
        abs(boundary_radius("lp", p, 1.0, theta) - boundary_radius("l1", 1, 1.0, theta))
        for p in (1.1, 1.01, 1.001)
    ]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-2


@pytest.mark.parametrize("p", [1.25, 2.0, 3.0])
def test_extremal_imaginary_part(p):
    q = 1.0
    res = minimize_scalar(
        lambda t: -boundary_radius("lp", p, q, t) * math.sin(t),
        bracket=(0.3, 1.2, 1.5), method="golden", tol=1e-12,
    )
    expected = 2 * (3 * math.sqrt(3) / 16) ** (1 / (2 * p - 1)) * q ** (2 * p / (2 * p - 1))
    assert -res.fun == pytest.approx(expected, abs=1e-8)


def test_l1_curve_extremal_and_nesting():
    rows = trace_curve("l1", 1, 1.0, 20000)
    assert rows[:, 2].max() == pytest.approx(3 * math.sqrt(3) / 8, abs=1e-6)
    assert rows.shape == (20000, 3)
    th = rows[:, 0]
    small = np.array([boundary_radius("l1", 1, 0.5, t) for t in th])
    assert np.all(small < np.hypot(rows[:, 1], rows[:, 2]))
    with pytest.raises(DomainError):
        trace_curve("l1", 1, 1.0, 8)


@given(st.floats(1e-3, math.pi - 1e-3))
def test_l1_tighter_than_bst(theta):
    r14 = boundary_radius("l1", 1, 1.0, theta)
    assert r14 <= 1.0
    if 1e-3 < theta < math.pi - 1e-3:
        assert r14 < 1.0


def test_delta_reach_equals_l1_only_on_imaginary_axis():
    assert delta_reachable_radius(math.pi / 2, 1.0) == pytest.approx(0.5, rel=1e-12)
    for t in (math.pi / 6, math.pi / 3, 2 * math.pi / 3):
        assert delta_reachable_radius(t, 1.0) < boundary_radius("l1", 1, 1.0, t) * (1 - 1e-3)


def test_specs_for_classes():
    d = specs_for(Delta(-1.0, 0.4))
    assert {s.bound_id for s in d} == {BoundId.BST_12, BoundId.L1_14, BoundId.IMAG_L1_15}
    w = specs_for(PiecewiseConstant((-1.0, 1.0), (2.0,)))
    ids = [s.bound_id for s in w]
    assert ids.count(BoundId.LP_16) == 3 and BoundId.LINF in ids and BoundId.SPLIT_19 in ids


def test_lieb_thirring_and_counting():
    assert lieb_thirring_sum([], 1.0) == (0.0, 0.0)
    V = PiecewiseConstant((-1.0, 1.0), (1.0,))
    assert count_bound(V, 1.0) == pytest.approx((2 * (math.e - 1)) ** 2)
    assert count_bound(V, 1e-4) > count_bound(V, 1e-2) > 1e3
