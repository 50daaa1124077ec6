import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opendoor.analytic import EvaluationError, qc_eval, theta_c
from opendoor.geometry import (
    EDGE_GAP,
    boundary_grid,
    c_alpha,
    c_zero,
    fd_tangent_angle,
    g_lower,
    gamma_curve,
    gamma_upper,
    graded_grid,
    max_arg,
    tangent_angle,
    trace_boundary,
)

C1_ROUGH = 3.0276
SQRT3 = math.sqrt(3)


def arrays(samples):
    th = np.array([s.theta for s in samples])
    R = np.array([s.R for s in samples])
    T = np.array([s.Theta for s in samples])
    b = np.array([s.beta for s in samples])
    return th, R, T, b


@pytest.fixture(scope="module")
def c_zero_value():
    return c_zero(1e-10)[0]


# --- grids --------------------------------------------------------------------------

@pytest.mark.parametrize("grid", [boundary_grid, graded_grid])
def test_grids_avoid_the_singular_points(grid):
    th = grid(64)
    assert np.all(np.diff(th) > 0)
    assert th[0] >= EDGE_GAP and th[-1] <= math.pi - EDGE_GAP
    z = np.exp(1j * th)
    assert np.min(np.abs(z - 1)) >= EDGE_GAP and np.min(np.abs(z + 1)) >= EDGE_GAP
    with pytest.raises(ValueError):
        grid(8)


def test_graded_grid_is_symmetric_and_relative():
    th = graded_grid(256)
    assert np.allclose(th + th[::-1], math.pi, atol=1e-14)
    # spacing proportional to theta near 0
    ratio = np.diff(th[:5]) / th[:4]
    assert np.allclose(ratio, ratio[0], rtol=0.05)


# --- traced boundary ---------------------------------------------------------------------

@pytest.mark.parametrize("c", [0.5, 1.0, 2.0, 3.0, C1_ROUGH])
def test_boundary_relations(c):
    th, R, T, _ = arrays(trace_boundary(c, 1024))
    dT = np.gradient(T, th, edge_order=2)
    dR = np.gradient(R, th, edge_order=2)
    res_re = R * np.cos(T) + dT - c / 2 * np.log(1 / np.tan(th / 2)) - 1
    res_im = R * np.sin(T) - dR / R - c * math.pi / 4
    assert np.max(np.abs(res_re)) < 1e-3
    assert np.max(np.abs(res_im)) < 1e-3


@pytest.mark.parametrize("c", [0.3, 1.0, 2.0, 3.0, C1_ROUGH])
def test_boundary_modulus_decreasing_and_strip(c):
    samples = trace_boundary(c, 512)
    th, R, T, _ = arrays(samples)
    assert np.all(R > 0)
    assert np.all(np.diff(R) < 0)
    assert np.all(np.diff(th) > 0)
    assert max(abs(s.q.imag) for s in samples) <= math.pi * c / 4 + 1e-8


def test_upper_arc_maps_into_the_first_quadrant(c_zero_value):
    for c in (0.5, 2.0, c_zero_value - 1e-6):
        _, _, T, _ = arrays(trace_boundary(c, 1024))
        assert np.all(T > 0) and np.all(T <= math.pi / 2 + 1e-9)


def test_argument_reaches_right_angle_at_theta_c():
    c = C1_ROUGH
    samples = trace_boundary(c, 4096)
    th, _, T, _ = arrays(samples)
    k = int(np.argmin(np.abs(th - theta_c(c))))
    assert abs(T[k] - math.pi / 2) < 1e-4
    assert abs(th[int(np.argmax(T))] - theta_c(c)) < 5e-3


def test_trace_reflection_symmetry():
    c = 1.0
    th, _, _, _ = arrays(trace_boundary(c, 64))
    up = qc_eval(c, np.exp(1j * th))
    down = qc_eval(c, np.exp(-1j * th))
    assert np.max(np.abs(np.conj(up) - down)) < 1e-10


def test_min_real_part_brackets_c1(c_zero_value):
    th = boundary_grid(4096)
    below = qc_eval(c_zero_value - 1e-4, np.exp(1j * th)).real.min()
    above = qc_eval(c_zero_value + 0.01, np.exp(1j * th)).real.min()
    assert below > 0 > above


# --- tangent directions ---------------------------------------------------------------------

def test_tangent_endpoint_values():
    for c in (0.5, 2.0, C1_ROUGH):
        assert tangent_angle(c, 0.0) == math.pi / 2
        # h_c ~ (c/2) log(1 + z) at -1 gives the coefficient A = -c/2
        assert tangent_angle(c, math.pi) == 3 * math.pi / 2
        assert tangent_angle(c, -math.pi) == 3 * math.pi / 2


@pytest.mark.parametrize("c,theta", [(2.0, math.pi / 3), (1.0, 0.2), (3.0, 2.5), (C1_ROUGH, theta_c(C1_ROUGH))])
def test_tangent_matches_finite_differences(c, theta):
    beta = tangent_angle(c, theta)
    fd = fd_tangent_angle(c, theta, 1e-5)
    assert abs((beta - fd + math.pi) % (2 * math.pi) - math.pi) < 1e-4


@given(st.floats(min_value=0.05, max_value=3.0), st.floats(min_value=0.01, max_value=math.pi - 0.01))
@settings(max_examples=30, deadline=None)
def test_tangent_in_range_and_fd_consistent(c, theta):
    beta = tangent_angle(c, theta)
    assert 0 <= beta < 2 * math.pi
    fd = fd_tangent_angle(c, theta, 1e-6)
    assert abs((beta - fd + math.pi) % (2 * math.pi) - math.pi) < 1e-4


def test_tangent_argument_validation():
    with pytest.raises(ValueError):
        tangent_angle(1.0, 4.0)


def test_tangent_along_trace_is_continuous():
    # the approach is logarithmic and only monotone once the gap is small
    gaps = (3e-2, 1e-2, 3e-3, 1e-3)
    dev_start, dev_end = [], []
    for gap in gaps:
        _, _, _, b = arrays(trace_boundary(2.0, 2048, gap=gap))
        assert np.max(np.abs(np.diff(b))) < 0.05
        dev_start.append(abs(b[0] - math.pi / 2))
        dev_end.append(abs(b[-1] - 3 * math.pi / 2))
    # the end values approach the analytic endpoint directions as the gap shrinks
    assert dev_start == sorted(dev_start, reverse=True)
    assert dev_end == sorted(dev_end, reverse=True)
    assert dev_start[-1] < 0.35 and dev_end[-1] < 0.35


def test_trace_beta_matches_pointwise_tangent():
    samples = trace_boundary(1.5, 64)
    for s in samples[::7]:
        pointwise = tangent_angle(1.5, s.theta)
        assert abs((s.beta - pointwise + math.pi) % (2 * math.pi) - math.pi) < 1e-12


# --- maximal argument and the constants c_alpha ----------------------------------------------

def test_max_arg_examples():
    assert max_arg(1e-3) < 1e-3
    assert max_arg(2.0) < max_arg(3.0)
    assert abs(max_arg(C1_ROUGH) - math.pi / 2) < 1e-4


def test_max_arg_dominates_interior_points():
    c = 2.5
    rng = np.random.default_rng(3)
    z = np.sqrt(rng.uniform(0, 0.998, 2000)) * np.exp(1j * rng.uniform(0, np.pi, 2000))
    assert np.max(np.angle(qc_eval(c, z))) < max_arg(c)


def test_c_zero_bracket(c_zero_value):
    est, lo, hi = c_zero(1e-9)
    assert lo < est < hi and hi - lo <= 1e-9
    assert 3.02756 < est < 3.02757
    assert abs(est - c_zero_value) < 1e-9


@pytest.mark.slow
def test_c_alpha_examples(c_zero_value):
    half = c_alpha(0.5, tol=1e-6)
    assert 4 * g_lower(0.5) / math.pi < half < 4 * SQRT3 * 0.5 / math.sqrt(3.5)
    assert abs(max_arg(half) - math.pi / 4) < 1e-5
    assert 3.02756 < c_alpha(1.0) < 3.02757
    assert abs(c_alpha(0.999, tol=1e-6) - c_zero_value) < 0.05


def test_c_alpha_validation():
    for a in (0.0, 1.5, -0.1):
        with pytest.raises(ValueError):
            c_alpha(a)


# --- closed-form bounds ---------------------------------------------------------------------------

def test_g_lower_examples():
    assert abs(g_lower(1.0) - SQRT3) < 1e-12
    assert abs(g_lower(0.5) - 1.0044319) < 1e-6
    closed = (2 + 3 * math.sqrt(2)) / (4 * math.sqrt(1 + math.sqrt(2)))
    assert g_lower(0.5) == pytest.approx(closed, rel=1e-15)
    assert g_lower(1e-9) < 1e-8


def test_g_lower_concave_and_above_the_line():
    a = np.linspace(0.01, 0.99, 99)
    g = np.array([g_lower(x) for x in a])
    assert np.all(np.diff(g, 2) < 0)
    assert np.all(g > SQRT3 * a)


def test_gamma_upper_examples():
    assert gamma_upper(1.0) == pytest.approx(SQRT3 * math.pi / 2, rel=1e-15)
    assert abs(gamma_upper(1.0) - 2.72069905) < 1e-8
    assert gamma_upper(0.5) == pytest.approx(SQRT3 * math.pi / (2 * math.sqrt(3.5)), rel=1e-15)
    assert gamma_upper(1e-9) < 1e-8
    with pytest.raises(ValueError):
        gamma_upper(0.0)
    with pytest.raises(ValueError):
        g_lower(2.0)


@pytest.mark.slow
def test_gamma_curve_points():
    pts = gamma_curve([0.25, 0.75, 1.0], tol=1e-6)
    for p in pts[:2]:
        assert p.lower < p.gamma < p.upper
        assert SQRT3 * p.alpha < p.lower
    assert abs(pts[-1].gamma - math.pi * 3.027565 / 4) < 1e-4
    assert pts[0].gamma < pts[1].gamma < pts[2].gamma


def test_degenerate_tangent_is_reported(monkeypatch):
    import opendoor.geometry as geo

    monkeypatch.setattr(geo, "qc_eval", lambda c, z, cfg=None: geo.h_c_eval(c, z))
    with pytest.raises(EvaluationError):
        geo.tangent_angle(1.0, 1.0)
