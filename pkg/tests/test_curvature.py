import math

import numpy as np
import pytest

from cavageo.curvature import (
    curvature_extremes,
    gaussian_curvature,
    orthogonal_trajectory_radius,
    principal_curvatures,
    scalar_curvature,
)
from cavageo.surface import SurfaceParams, preset
from cavageo.validate import brioschi_curvature, second_fundamental_form_oracle

E = preset("euclid-canonical")
L = preset("lorentz-canonical")


def test_euclid_anchor_values():
    k1, k2 = principal_curvatures(E, 0.0, 0.0)
    assert float(k1) == 1.0
    # a / (a^2 + c^2 + ab)
    assert float(k2) == pytest.approx(1.5 / 4.39, abs=1e-15)
    assert float(scalar_curvature(E, 0.0, 0.0)) == pytest.approx(3 / 4.39, abs=1e-15)
    assert float(orthogonal_trajectory_radius(E, 0, 0)) == pytest.approx(4.39 / 1.5)


def test_lorentz_anchor_values():
    k1, k2 = principal_curvatures(L, 0.0, 0.0)
    assert float(k1) == 1.0
    assert float(k2) == pytest.approx(-0.2, abs=1e-15)
    assert float(scalar_curvature(L, 0.0, 0.0)) == pytest.approx(0.4, abs=1e-15)
    assert float(principal_curvatures(L, 0.0, math.pi / 2)[1]) == pytest.approx(0.0, abs=1e-16)


@pytest.mark.parametrize("p", [E, L, preset("torus")], ids=["euclid", "lorentz", "torus"])
def test_scalar_curvature_vanishes_on_polar_helices(p):
    R = scalar_curvature(p, None, np.array([math.pi / 2, -math.pi / 2]))
    assert np.max(np.abs(R)) < 1e-15


def test_extremes_sign_pattern():
    r0, rpi = curvature_extremes(E)
    assert r0 > 0 > rpi
    assert rpi == pytest.approx(-2 * 1.5 / (4.39 - 3.0), abs=1e-14)
    r0, rpi = curvature_extremes(L)
    assert r0 == pytest.approx(0.4) and rpi == pytest.approx(-2 * 2 / 14)


def test_torus_limit():
    T = preset("torus")
    v = np.linspace(0, 2 * math.pi, 31)
    assert np.allclose(gaussian_curvature(T, None, v), np.cos(v) / (1.0 * (1.5 + np.cos(v))), atol=1e-15)


def test_general_tilt_rejected():
    with pytest.raises(ValueError):
        principal_curvatures(SurfaceParams.euclidean(1.5, 1.0, 0.8, 0.3), 0, 0)


@pytest.mark.parametrize("p", [E, L, SurfaceParams.orthogonal(1.0, 0.4, 2.0)], ids=["euclid", "lorentz", "thin"])
def test_shape_operator_oracle(p):
    u, v = np.meshgrid(np.linspace(0, 6, 7), np.linspace(0, 2 * math.pi, 25), indexing="ij")
    k1, k2 = principal_curvatures(p, u, v)
    o1, o2 = second_fundamental_form_oracle(p, u, v)
    assert np.max(np.abs(k1 - o1)) < 1e-6
    assert np.max(np.abs(k2 - o2)) < 1e-6


def test_oracle_step_bounds():
    with pytest.raises(ValueError):
        second_fundamental_form_oracle(E, 0, 0, h=1e-2)


@pytest.mark.parametrize("p", [E, L, preset("torus")], ids=["euclid", "lorentz", "torus"])
def test_intrinsic_curvature_matches_product(p):
    # Gauss equation: intrinsic curvature equals k1 k2 in both signatures
    v = np.linspace(0, 2 * math.pi, 41)
    assert np.max(np.abs(brioschi_curvature(p, v) - gaussian_curvature(p, None, v))) < 1e-8
