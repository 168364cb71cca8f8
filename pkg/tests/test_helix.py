import math
import warnings

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from cavageo import helix
from cavageo.errors import ChartDomainError
from cavageo.surface import SurfaceParams, ambient_inner, embed, preset

E = preset("euclid-canonical")
L = preset("lorentz-canonical")


def test_periods_and_rates():
    assert helix.coordinate_period(L) == pytest.approx(8 * math.pi)
    assert helix.proper_period(L) == pytest.approx(2 * math.pi * math.sqrt(12))
    assert helix.proper_angular_velocity(L) == pytest.approx(1 / math.sqrt(12))
    # dilation: coordinate / proper period = gamma
    assert helix.coordinate_period(L) / helix.proper_period(L) == pytest.approx(L.gamma)
    with pytest.raises(ValueError):
        helix.proper_period(E)


def test_frenet_curvatures():
    fe = helix.helix_frame(E, 0.0)
    assert fe.kappa == pytest.approx(1.5 / 2.89)
    assert fe.Omega == pytest.approx(0.8 / 2.89)
    fl = helix.helix_frame(L, 0.0)
    assert fl.kappa == pytest.approx(2 / 12)
    assert fl.Omega == pytest.approx(4 / 12)


@pytest.mark.parametrize("p", [E, L], ids=["euclid", "lorentz"])
def test_frames_orthonormal(p):
    for phi in np.linspace(0, 7, 8):
        assert helix.frame_residual(p, helix.helix_frame(p, phi)) < 1e-14


@pytest.mark.parametrize("p", [E, L], ids=["euclid", "lorentz"])
def test_frenet_serret_equations(p):
    # d/ds along the helix with ds = helix_length_scale dphi
    s = p.helix_length_scale
    sign = -1.0 if p.is_lorentzian else 1.0
    h = 1e-5
    for phi in (0.0, 0.9, 2.5):
        f = helix.helix_frame(p, phi)
        fp, fm = helix.helix_frame(p, phi + h), helix.helix_frame(p, phi - h)
        dT = (fp.T - fm.T) / (2 * h * s)
        dN = (fp.N - fm.N) / (2 * h * s)
        dB = (fp.B - fm.B) / (2 * h * s)
        assert np.allclose(dT, f.kappa * f.N, atol=1e-9)
        # Euclidean: dN = -kappa T + tau B; Lorentzian: dN = kappa T + Omega B
        assert np.allclose(dN, -sign * f.kappa * f.T + f.Omega * f.B, atol=1e-9)
        assert np.allclose(dB, -f.Omega * f.N, atol=1e-9)


def test_tube_offset_from_frame():
    # Lorentzian tube: X = helix - b cos v N - b sin v B
    for u in (0.0, 1.3):
        fr = helix.helix_frame(L, u)
        for v in (0.0, 0.8, 2.0):
            X = np.array([L.a * math.cos(u), L.a * math.sin(u), L.c * u])
            X = X - L.b * math.cos(v) * fr.N - L.b * math.sin(v) * fr.B
            assert np.allclose(X, embed(L, u, v), atol=1e-13)


def test_thomas_angle_value():
    # 2 pi (gamma - 1), gamma = 2/sqrt(3)
    assert helix.thomas_angle(L) == pytest.approx(2 * math.pi * (2 / math.sqrt(3) - 1), abs=1e-15)
    assert helix.thomas_angle(L) == pytest.approx(0.9720121497572859, abs=1e-15)


def test_fermi_frame_full_rotation_and_start():
    f0 = helix.fermi_frame(L, 0.0)
    fr = helix.helix_frame(L, 0.0)
    assert np.allclose(f0.N, fr.N) and np.allclose(f0.B, fr.B)
    # after tau = 2 pi / Omega the rotation angle is a full turn
    tau = 2 * math.pi / fr.Omega
    f1 = helix.fermi_frame(L, tau)
    r1 = helix.helix_frame(L, tau * helix.proper_angular_velocity(L))
    assert np.allclose(f1.N, r1.N, atol=1e-12)


def test_fermi_frame_is_fermi_walker_transported():
    rhs = helix.fermi_walker_rhs(L)
    T = helix.proper_period(L)
    f0 = helix.fermi_frame(L, 0.0)
    for X0, name in ((f0.N, "N"), (f0.B, "B")):
        sol = solve_ivp(rhs, (0, T), X0, method="DOP853", rtol=1e-12, atol=1e-12, dense_output=True)
        for tau in np.linspace(0, T, 6):
            target = getattr(helix.fermi_frame(L, tau), name)
            assert np.allclose(sol.sol(tau), target, atol=1e-9)


def test_fermi_coordinates_on_surface():
    # a Fermi point at radius b sits on the tube
    for tau in (0.0, 3.0, 11.0):
        for th in (0.0, 1.0, 4.0):
            x = helix.fermi_to_inertial(L, L.b * math.cos(th), L.b * math.sin(th), tau)
            u = tau / math.sqrt(12)
            v = th - helix.helix_frame(L, 0).Omega * tau - math.pi
            assert np.allclose(x, embed(L, u, v), atol=1e-12)


def test_fermi_chart_domain():
    kappa = helix.helix_frame(L, 0).kappa
    r = 0.995 / kappa
    with pytest.raises(ChartDomainError):
        helix.fermi_to_inertial(L, r, 0.0, 0.0)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        helix.fermi_to_inertial(L, r, 0.0, 0.0, strict=False)
    assert w


def test_four_velocity_normalisation():
    fr = helix.helix_frame(L, 0.4)
    assert float(ambient_inner(L, fr.T, fr.T)) == pytest.approx(-1.0)


def test_thomas_angle_small_speed_limit():
    for a in (1e-2, 1e-3):
        p = SurfaceParams.lorentzian(a, a / 10, 1.0)
        assert helix.thomas_angle(p) == pytest.approx(math.pi * p.speed**2, rel=2 * p.speed**2)
