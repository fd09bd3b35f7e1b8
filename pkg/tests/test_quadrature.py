import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from indefspec.quadrature import gauss_panels, scheme_from_edges


@given(
    a=st.floats(-5, 0.5),
    width=st.floats(0.1, 6),
    c=st.floats(-3, 3),
)
def test_exponentials_integrate_to_machine_precision(a, width, c):
    b = a + width
    s = gauss_panels((a, b), panels_per_unit=4)
    exact = np.exp(c * a) * np.expm1(c * width) / c if c != 0 else width
    assert np.sum(s.weights * np.exp(c * s.nodes)) == pytest.approx(exact, rel=1e-12, abs=1e-12)


def test_origin_is_always_a_panel_edge():
    s = gauss_panels((-1.3, 0.7), panels_per_unit=3)
    assert 0.0 in s.edges
    lo = s.edges[s.panel]
    hi = s.edges[s.panel + 1]
    assert np.all((lo < s.nodes) & (s.nodes < hi))
    assert not np.any((lo < 0) & (hi > 0))


def test_straddling_panel_rejected():
    with pytest.raises(ValueError):
        scheme_from_edges([-1.0, 1.0])
    with pytest.raises(ValueError):
        scheme_from_edges([0.0, 0.0, 1.0])


def test_cumulative_weights_integrate_partial_panels():
    s = gauss_panels((0.2, 1.7), panels_per_unit=2, order=10)
    S = s.cumulative_weights()
    f = np.cos(3 * s.nodes)
    for i in range(len(s)):
        p = s.panel[i]
        sl = slice(p * s.order, (p + 1) * s.order)
        a = s.edges[p]
        exact = (np.sin(3 * s.nodes[i]) - np.sin(3 * a)) / 3
        assert S[i] @ f[sl] == pytest.approx(exact, abs=1e-11)


def test_refined_doubles_panels():
    s = gauss_panels((-1, 2), panels_per_unit=1)
    r = s.refined()
    assert r.n_panels == 2 * s.n_panels
    assert r.weights.sum() == pytest.approx(3.0)
