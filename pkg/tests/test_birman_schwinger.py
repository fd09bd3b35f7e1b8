import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from indefspec.birman_schwinger import (
    ConvergenceError,
    assemble,
    default_scheme,
    delta_operator,
    det,
    hs_bound,
    hs_norm,
    leading_rank_one,
    log_det,
    op_norm,
    schur_bound,
)
from indefspec.eigensolver import find_eigenvalues
from indefspec.contour import ContourSpec
from indefspec.potentials import Delta, PiecewiseConstant, moments
from indefspec.spectral_core import ALPHA, DomainError, signed_diagonal, sqrt_upper

WELL = PiecewiseConstant((-0.7, 0.3, 1.2), (-3 + 2j, -2 - 1.5j))

energies = st.builds(
    lambda r, t: sqrt_upper(r * cmath.exp(1j * t)),
    st.floats(0.1, 30),
    st.floats(0.02, math.pi - 0.02),
)
wells = st.builds(
    lambda x0, w1, w2, a, b, c, d: PiecewiseConstant((x0, x0 + w1, x0 + w1 + w2), (complex(a, b), complex(c, d))),
    st.floats(-1.5, 0.5), st.floats(0.2, 1.2), st.floats(0.2, 1.2),
    st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3),
)


@given(wells, energies)
def test_power_iteration_matches_svd(V, E):
    op = assemble(V, E)
    assert op_norm(op) == pytest.approx(np.linalg.norm(op.matrix, 2), rel=1e-8)
    assert op_norm(op) <= hs_norm(op) * (1 + 1e-12)


@given(wells, energies)
def test_signed_and_unsigned_share_singular_values(V, E):
    a = np.linalg.svd(assemble(V, E, signed=True).matrix, compute_uv=False)
    b = np.linalg.svd(assemble(V, E, signed=False).matrix, compute_uv=False)
    assert np.allclose(a, b, atol=1e-12 * a[0])


@given(wells, energies)
def test_hilbert_schmidt_bound(V, E):
    assert hs_norm(assemble(V, E)) <= hs_bound(V, E) * (1 + 1e-4)


@given(wells, energies, st.sampled_from([1.25, 2.0, 4.0]))
def test_schur_bound_dominates(V, E, p):
    assert op_norm(assemble(V, E)) <= schur_bound(V, E, p) * (1 + 1e-8)


def test_determinant_vanishes_at_eigenvalue():
    region = ContourSpec(-2, 2, 0.01, 4)
    lam = find_eigenvalues(WELL.reflected(), region)[0].lam
    E = sqrt_upper(lam)
    near = abs(det(assemble(WELL.reflected(), E)))
    far = abs(det(assemble(WELL.reflected(), sqrt_upper(lam + 0.3))))
    assert near < 1e-8 * far


def test_determinant_zero_converges_under_refinement():
    """The discretised zero is stable under grid refinement (spectral convergence)."""
    from indefspec.eigensolver import newton

    V = WELL.reflected()
    lam0 = find_eigenvalues(V, ContourSpec(-2, 2, 0.01, 4))[0].lam
    zs = []
    for ppu in (6, 12):
        f = lambda z, ppu=ppu: det(assemble(V, sqrt_upper(z), default_scheme(V, sqrt_upper(z), ppu)))  # noqa: E731
        z, _, _ = newton(f, lam0 + 1e-4, tol=1e-14, scale=1.0)
        zs.append(z)
    assert abs(zs[0] - zs[1]) < 1e-9
    assert abs(zs[1] - lam0) < 1e-9


def test_log_det_branch_and_unsigned_guard():
    E = sqrt_upper(1 + 1j)
    op = assemble(WELL, E, signed=False)
    with pytest.raises(DomainError):
        log_det(op)
    ld = log_det(op, allow_unsigned=True)
    assert np.exp(ld) == pytest.approx(np.linalg.det(np.eye(op.dim) + op.corrected), rel=1e-10)


def test_delta_operator_closed_form():
    E = sqrt_upper(0.5j)
    V = Delta(-1.0 + 0j, 0.0)
    op = delta_operator(V, E)
    # lam = i c^2 / 2 is the eigenvalue of a point interaction c delta at 0
    assert 1 + op.matrix[0, 0] == pytest.approx(0, abs=1e-15)
    assert op.matrix[0, 0] == pytest.approx(-signed_diagonal(E, 0.0))
    with pytest.raises(DomainError):
        assemble(V, E)


def test_leading_rank_one_traces():
    E = sqrt_upper(1e-3j)
    m = moments(WELL)
    unsigned = leading_rank_one(WELL, E)
    signed = leading_rank_one(WELL, E, signed=True)
    pref = 1 / (2 * ALPHA * E.sqrt_lam)
    assert np.trace(unsigned.matrix) == pytest.approx(pref * m.v_sgn, rel=1e-12)
    assert np.trace(signed.matrix) == pytest.approx(pref * (m.v_plus + m.v_minus), rel=1e-12)
    # the full operator approaches the signed rank-one part as lam -> 0
    full = assemble(WELL, E)
    rel = np.linalg.norm(full.matrix - signed.matrix, 2) / np.linalg.norm(signed.matrix, 2)
    assert rel < 0.1


def test_op_norm_errors():
    op = assemble(WELL, sqrt_upper(1j))
    with pytest.raises(DomainError):
        op_norm(op, tol=0)
    with pytest.raises(ConvergenceError):
        op_norm(op, tol=1e-16, max_iter=1)


def test_schur_bound_domain():
    with pytest.raises(DomainError):
        schur_bound(WELL, sqrt_upper(1j), 1.0)
