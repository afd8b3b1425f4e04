import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from graphent import (
    build_family,
    delta_from_invariants,
    eig_sym,
    eof,
    invariants,
    max_entanglement,
    meanfield_pair_covariance,
    pair_entanglement,
    pair_reduction,
    potential,
    standard_form,
)
from graphent.dynamics import AsymmetricPairError, SimConfig, time_grid
from graphent.entanglement import TwoModeInvariants, UnphysicalStateError, trajectory

# mpmath, 30 digits: C+ log2 C+ - C- log2 C- at delta = 1/sqrt(5)
EOF_AT_INV_SQRT5 = 0.7018824866054366


def pt_symplectic_min(m):
    """Smallest symplectic eigenvalue of the partial transpose (p_2 -> -p_2)."""
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    sigma = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    return np.abs(np.linalg.eigvals(1j * sigma @ (flip @ m @ flip))).min()


def meanfield_uvw(n, c, t):
    w = math.sqrt(1 + n * c)
    g = (w - 1 / w) ** 2 * math.sin(w * t) ** 2
    return 1 + (1 / n) * (1 - 1 / n) * g, -g / n ** 2, 1 + 2 * g * (n - 2) / n ** 2


def two_vertex_delta(c, t):
    w = math.sqrt(1 + 2 * c)
    a = (1 / w - w) * math.sin(w * t)
    return math.sqrt(1 + a * a / 4) - abs(a) / 2


def sample_states():
    states = []
    for name, size, c, pairs in [
        ("two", None, 2.0, [(0, 1)]), ("complete", 6, 3.0, [(0, 1)]),
        ("cube", None, 5.0, [(0, 1), (0, 3), (0, 7)]), ("octahedron", None, 2.0, [(0, 1), (0, 3)]),
        ("cycle", 6, 1.5, [(0, 1), (0, 2), (0, 3)]),
    ]:
        s = eig_sym(potential(build_family(name, size), c))
        for pair in pairs:
            states += [pair_reduction(s, t, *pair) for t in time_grid(12.0, 60)[1:]]
    return states


STATES = sample_states()


def test_identity_invariants():
    inv = invariants(np.eye(4))
    assert (inv.u, inv.v, inv.w, inv.xi) == (1.0, 0.0, 1.0, 0.0)
    sf = standard_form(inv)
    assert (sf.n, sf.k_x, sf.k_p) == (1.0, 0.0, 0.0)
    assert delta_from_invariants(inv) == 1.0


@pytest.mark.parametrize("n, c", [(3, 1.0), (20, 1.0), (50, 0.3), (4, 1.0)])
def test_meanfield_invariant_formulas(n, c):
    s = eig_sym(potential(build_family("complete", n), c))
    for t in np.linspace(0, 5, 40):
        inv = invariants(pair_reduction(s, t, 0, 1))
        np.testing.assert_allclose((inv.u, inv.v, inv.w), meanfield_uvw(n, c, t), atol=1e-9)


def test_asymmetric_state_rejected():
    m = np.eye(4)
    m[0, 0] = 2.0
    with pytest.raises(AsymmetricPairError):
        invariants(m)


def test_standard_form_two_vertex_peak():
    w = math.sqrt(5)
    sf = standard_form(invariants(meanfield_pair_covariance(2, 2.0, math.pi / (2 * w))))
    assert (sf.n - sf.k_x) * (sf.n + sf.k_p) == pytest.approx(1 / 5, abs=1e-12)


def test_standard_form_meanfield_residuals():
    n, c = 3, 10.0
    w = math.sqrt(1 + n * c)
    inv = invariants(meanfield_pair_covariance(n, c, math.pi / (2 * w)))
    sf = standard_form(inv)
    assert sf.k_x * sf.k_p == pytest.approx(inv.v, abs=1e-9)
    assert sf.n ** 2 == pytest.approx(inv.u, abs=1e-9)
    assert (sf.n ** 2 - sf.k_x ** 2) * (sf.n ** 2 - sf.k_p ** 2) == pytest.approx(inv.w, abs=1e-7)
    assert sf.k_x >= 0 >= sf.k_p and sf.k_x >= abs(sf.k_p)


def test_standard_form_invariant_relations_on_samples():
    for m in STATES:
        inv = invariants(m)
        sf = standard_form(inv)
        assert abs(sf.n ** 2 - inv.u) < 1e-9
        assert abs(sf.k_x * sf.k_p - inv.v) < 1e-9
        assert abs((sf.n ** 2 - sf.k_x ** 2) * (sf.n ** 2 - sf.k_p ** 2) - inv.w) < 1e-7
        assert sf.k_x >= abs(sf.k_p) - 1e-12
        assert inv.u >= 1 - 1e-9 and inv.w > 0


@pytest.mark.parametrize("c", [2.0, 8.3, 0.1])
def test_two_vertex_delta_closed_form(c):
    for t in np.linspace(0, 4, 101):
        inv = invariants(meanfield_pair_covariance(2, c, t))
        assert delta_from_invariants(inv) == pytest.approx(two_vertex_delta(c, t), abs=1e-10)
        assert standard_form(inv).delta() == pytest.approx(two_vertex_delta(c, t), abs=1e-10)


def test_routes_agree_on_dynamics_states():
    for m in STATES:
        r = pair_entanglement(m)
        assert r.route_gap < 1e-8
        assert r.delta == pytest.approx(pt_symplectic_min(m.matrix), abs=1e-8)


def test_sign_of_det_beta_matters_for_closed_expression():
    # cube pairs reach det beta > 0, where dropping the sign(v) factor breaks agreement
    positive = [m for m in STATES if invariants(m).v > 1e-3]
    assert positive
    for m in positive:
        inv = invariants(m)
        r = math.sqrt(inv.xi ** 2 - 4 * inv.u ** 2 * inv.v ** 2)
        unsigned = inv.u - inv.v - math.sqrt((inv.xi - r) / 2) - math.sqrt((inv.xi + r) / 2)
        assert abs(unsigned - delta_from_invariants(inv) ** 2) > 1e-6
        assert pair_entanglement(m).delta >= 1 - 1e-9


def test_unphysical_inputs():
    with pytest.raises(UnphysicalStateError):
        standard_form(TwoModeInvariants(0.0, 0.0, 1.0, -1.0))
    with pytest.raises(UnphysicalStateError):
        delta_from_invariants(TwoModeInvariants(1.0, 3.0, 1.0, 9.0))


def test_eof_values():
    r = eof(1.0)
    assert (r.eof, r.c_plus, r.c_minus) == (0.0, 1.0, 0.0)
    r = eof(1.7)
    assert r.eof == 0.0 and r.Delta == 1.0
    assert eof(1 / math.sqrt(5)).eof == pytest.approx(EOF_AT_INV_SQRT5, abs=1e-12)
    assert eof(0.5, n_vertices=5).rescaled == pytest.approx(4 * eof(0.5).eof)
    for bad in (0.0, -0.2):
        with pytest.raises(ValueError):
            eof(bad)


def test_eof_shape():
    deltas = np.linspace(0.01, 0.99, 100)
    values = [eof(d).eof for d in deltas]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert eof(1 - 1e-6).eof < 1e-4
    for d in deltas:
        r = eof(d)
        assert abs(r.c_plus - r.c_minus - 1) < 1e-9


@settings(max_examples=100, deadline=None)
@given(d=st.floats(1e-6, 5.0))
def test_eof_nonnegative_and_zero_iff_separable(d):
    r = eof(d)
    assert r.eof >= 0
    assert (r.eof == 0) == (d >= 1)


@pytest.mark.parametrize("c", [2.0, 8.3])
def test_two_vertex_delta_min(c):
    cfg = SimConfig(build_family("two"), c, 10.0, 2000)
    res = max_entanglement(cfg, (0, 1))
    w = math.sqrt(1 + 2 * c)
    assert pair_entanglement(meanfield_pair_covariance(2, c, res.t_star)).delta == pytest.approx(1 / w, abs=1e-8)


def test_max_two_vertex_c2():
    res = max_entanglement(SimConfig(build_family("two"), 2.0, 4.21, 2000), (0, 1))
    assert res.t_star * math.sqrt(5) == pytest.approx(math.pi / 2, abs=1e-4)
    assert res.eof == pytest.approx(EOF_AT_INV_SQRT5, abs=1e-4)


def test_max_for_general_graph_uses_grid(cube):
    cfg = SimConfig(cube, 5.0, 6.0, 600)
    res = max_entanglement(cfg, (0, 7))
    grid = max(r.eof for r in trajectory(cfg, (0, 7)))
    assert res.eof >= grid and 0 <= res.t_star <= 6.0


def test_no_coupling_no_entanglement():
    res = max_entanglement(SimConfig(build_family("complete", 4), 0.0, 1.0, 2), (0, 1))
    assert res.eof < 1e-12


def test_trajectory_rescaled(cube):
    results = trajectory(SimConfig(build_family("complete", 5), 1.0, 1.0, 11), (1, 3))
    assert all(r.rescaled == pytest.approx(4 * r.eof) for r in results)
