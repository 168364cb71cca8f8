import math

import numpy as np
import pytest

from cavageo import orbits
from cavageo.surface import preset

E = preset("euclid-canonical")
L = preset("lorentz-canonical")
T = preset("torus")


def _trapezoid_delta_u(p, n=4096):
    # periodic trapezoid rule converges geometrically for the analytic integrand
    v = np.arange(n) * (2 * math.pi / n)
    return float(np.sum(orbits.zero_ell_slope(p, v)) * 2 * math.pi / n)


def test_delta_u_euclid():
    du = orbits.delta_u_per_revolution(E)
    assert du == pytest.approx(1.3738, abs=5e-4)
    assert du == pytest.approx(_trapezoid_delta_u(E), abs=1e-12)
    assert du == pytest.approx(1.3737985961442685, abs=1e-12)


def test_delta_u_lorentz_closed_integrand():
    a, b, c = L.a, L.b, L.c
    q = c * c - a * a
    v = np.arange(4096) * (2 * math.pi / 4096)
    integrand = math.sqrt(q) * b * b * c / ((q - a * b * np.cos(v)) ** 2 - b * b * c * c)
    ref = float(np.sum(integrand) * 2 * math.pi / 4096)
    assert orbits.delta_u_per_revolution(L) == pytest.approx(ref, abs=1e-12)
    assert ref == pytest.approx(0.7194112253608878, abs=1e-12)


def test_torus_has_no_gap():
    assert orbits.delta_u_per_revolution(T) == 0.0


@pytest.mark.parametrize("p", [E, L], ids=["euclid", "lorentz"])
def test_zero_ell_geodesic_agrees_with_quadrature(p):
    assert orbits.zero_ell_geodesic_delta_u(p) == pytest.approx(orbits.delta_u_per_revolution(p), abs=1e-8)


def test_cumulative_antiderivative_additivity():
    du = orbits.delta_u_per_revolution(L)
    v = np.array([-7.0, -3.0, -0.5, 0.0, 1.0, 3.1, 9.0])
    ac = orbits.cumulative_zero_ell_azimuth(L, v)
    assert np.allclose(orbits.cumulative_zero_ell_azimuth(L, v + 2 * math.pi) - ac, du, atol=1e-12)
    assert orbits.cumulative_zero_ell_azimuth(L, 0.0) == 0.0
    # continuity across the branch point v = pi
    left = orbits.cumulative_zero_ell_azimuth(L, math.pi - 1e-9)
    right = orbits.cumulative_zero_ell_azimuth(L, math.pi + 1e-9)
    assert abs(right - left) < 1e-8
    # monotone: the slope keeps one sign
    dense = orbits.cumulative_zero_ell_azimuth(L, np.linspace(-10, 10, 201))
    assert np.all(np.diff(dense) > 0)


def test_null_pair_asymmetry():
    pair = orbits.null_pair_return(L)
    assert pair.prograde > pair.retrograde
    pro_q, retro_q = orbits.null_pair_quadrature(L)
    assert pair.prograde == pytest.approx(pro_q, abs=1e-8)
    assert pair.retrograde == pytest.approx(retro_q, abs=1e-8)
    assert pair.prograde == pytest.approx(2.80992589241629, abs=1e-8)
    assert pair.retrograde == pytest.approx(1.37110344169452, abs=1e-8)
    for tr in (pair.prograde_trace, pair.retrograde_trace):
        assert np.max(np.abs(tr.energy)) < 1e-9
        assert tr.max_ell_drift < 1e-9
    assert pair.prograde_trace.v[-1] == pytest.approx(2 * math.pi, abs=1e-10)
    assert pair.retrograde_trace.v[-1] == pytest.approx(-2 * math.pi, abs=1e-10)


def test_null_pair_mirror_symmetry():
    # the retrograde member is the prograde one of the mirror image v -> -v,
    # whose zero-ell slope has the same integral: A +- B decomposition
    pro, retro = orbits.null_pair_quadrature(L)
    du = orbits.delta_u_per_revolution(L)
    assert (pro - retro) / 2 == pytest.approx(du, abs=1e-10)


def test_null_requires_lorentz():
    with pytest.raises(ValueError):
        orbits.null_return(E, +1)


def test_radial_period_harmonic_limit():
    lo, hi = orbits.bounded_angle_range(E)
    assert math.sin(lo) == pytest.approx(
        math.sqrt(((2.89 - 1.5) ** 2 + 0.64) / 2.89) / math.sqrt(6.89), abs=1e-14
    )
    near = orbits.azimuth_per_oscillation(E, hi - 1e-6)
    nearer = orbits.azimuth_per_oscillation(E, hi - 1e-8)
    assert near == pytest.approx(nearer, abs=1e-6)


def test_radial_period_matches_integration():
    beta = 1.0
    s0, energy, ell = orbits._euclidean_origin_orbit(E, beta)
    per = orbits.radial_period(E, energy, ell)
    from cavageo.geodesic import integrate
    from cavageo.ode import Event

    # second return to v = 0 moving upwards closes one oscillation
    ev = Event(lambda t, y: y[1], direction=+1, terminal=True, count=1)
    tr = integrate(E, s0, s0.lam + 1.5 * per.lam, tol=1e-12, events=[ev])
    lam_e, state = tr.events[-1]
    assert lam_e == pytest.approx(per.lam, abs=1e-8)
    assert state.u == pytest.approx(per.u, abs=1e-8)


def test_periodic_search_and_closure():
    betas = orbits.periodic_search(E, 1, 1, samples=60)
    assert len(betas) == 1
    beta = betas[0]
    assert orbits.azimuth_per_oscillation(E, beta) == pytest.approx(2 * math.pi, abs=1e-8)
    coord, spatial, _ = orbits.periodic_closure(E, beta, 1, 1)
    assert coord < 1e-6 and spatial < 1e-6
    # too few azimuthal turns for any bounded orbit: empty, not an error
    assert orbits.periodic_search(E, 1, 3, samples=30) == []
    with pytest.raises(ValueError):
        orbits.periodic_search(E, 2, 4)
