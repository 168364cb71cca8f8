import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavageo.geodesic import InitialSpec, conserved, initial_data, integrate
from cavageo.potential import (
    SPECIAL_LEVELS,
    OrbitClass,
    classify,
    effective_potential,
    potential_profile,
    turning_points,
)
from cavageo.surface import preset

E = preset("euclid-canonical")
L = preset("lorentz-canonical")


def test_values_at_outer_equator():
    # (a^2+c^2) / (2 ((a^2+c^2+ab)^2 + b^2c^2)) = 2.89 / (2 * 19.9121) = 1/13.78
    assert float(effective_potential(E, 0.0, 1.0)) == pytest.approx(1 / 13.78, abs=1e-16)
    # -(c^2-a^2) / (2 ((c^2-a^2-ab)^2 - b^2c^2)) = -12/168
    assert float(effective_potential(L, 0.0, 1.0)) == pytest.approx(-1 / 14, abs=1e-16)


def test_zero_ell_is_flat():
    v = np.linspace(-3, 3, 11)
    assert np.all(effective_potential(E, v, 0.0) == 0.0)
    assert turning_points(E, 0.5, 0.0) == []
    assert classify(E, 0.5, 0.0) is OrbitClass.WRAPPING


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([E, L]), st.floats(0, 3.14), st.floats(0.1, 5))
def test_potential_even(p, v, ell):
    assert float(effective_potential(p, v, ell)) == pytest.approx(float(effective_potential(p, -v, ell)), rel=1e-14)


def test_extremes_at_equators():
    prof = potential_profile(E, 1.0, 721)
    assert prof.V.argmin() == 360  # v = 0
    assert prof.V.max() == pytest.approx(prof.levels["inner_equator"])
    assert set(prof.levels) == set(SPECIAL_LEVELS)
    assert prof.levels["northern_helix"] == pytest.approx(prof.levels["southern_helix"])
    with pytest.raises(ValueError):
        potential_profile(E, 1.0, 1)


def test_turning_points_near_inner_equator():
    Vpi = float(effective_potential(E, math.pi, 1.0))
    roots = turning_points(E, Vpi - 1e-6, 1.0)
    assert len(roots) == 2
    assert roots[0] == pytest.approx(-roots[1], abs=1e-15)
    assert math.pi - 0.01 < roots[1] < math.pi
    assert float(effective_potential(E, roots[1], 1.0)) == pytest.approx(Vpi - 1e-6, abs=1e-13)
    assert classify(E, Vpi - 1e-6, 1.0) is OrbitClass.RADIALLY_BOUNDED
    assert turning_points(E, Vpi + 1e-6, 1.0) == []
    assert classify(E, Vpi + 1e-6, 1.0) is OrbitClass.WRAPPING


def test_below_minimum_raises():
    with pytest.raises(ValueError):
        turning_points(E, 0.5 * float(effective_potential(E, 0.0, 1.0)), 1.0)


@pytest.mark.parametrize("beta,bounded", [(1.2, True), (0.2, False)])
def test_classification_matches_integration(beta, bounded):
    s0 = initial_data(E, InitialSpec.angle(beta))
    cp = conserved(E, s0)
    cls = classify(E, cp.energy, cp.ell)
    tr = integrate(E, s0, 200.0)
    assert (cls is OrbitClass.RADIALLY_BOUNDED) == bounded
    crossed = bool(np.any(np.abs(tr.v) > math.pi))
    assert crossed == (not bounded)
    if bounded:
        vstar = max(turning_points(E, cp.energy, cp.ell))
        assert np.max(np.abs(tr.v)) == pytest.approx(vstar, abs=1e-6)
