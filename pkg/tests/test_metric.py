import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavageo.errors import AdmissibilityError
from cavageo.metric import (
    area_element,
    metric_closed_form,
    metric_oracle,
    metric_v_derivative,
    orthogonal_direction,
    orthogonal_grid_coordinate,
    pappus_area,
    quadrant_sincos,
    slicing_split,
    surface_area_one_rev,
    threading_split,
)
from cavageo.surface import SurfaceParams, preset

E = preset("euclid-canonical")
L = preset("lorentz-canonical")


def test_euclid_canonical_values_at_origin():
    g = metric_closed_form(E, 0.0, 0.0)
    # (a+b)^2 + c^2 and -b^2 c / sqrt(a^2+c^2)
    assert float(g.g_uu) == pytest.approx(6.89, abs=1e-14)
    assert float(g.g_uv) == pytest.approx(-8 / 17, abs=1e-15)
    assert float(g.g_vv) == 1.0


def test_lorentz_canonical_values_at_origin():
    g = metric_closed_form(L, 0.0, 0.0)
    assert float(g.g_uu) == pytest.approx(-7.0, abs=1e-13)
    assert float(g.g_uv) == pytest.approx(4 / math.sqrt(12), abs=1e-14)
    th = threading_split(L, 0.0, 0.0)
    # M^2 = ((c^2-a^2-ab)^2 - b^2c^2)/(c^2-a^2) = 84/12
    assert float(th.M) ** 2 == pytest.approx(7.0, abs=1e-13)


def test_orthogonal_metric_closed_forms():
    # orthogonal family: g_uv constant, M^2 = ((s^2+ab cos v)^2 + b^2c^2)/s^2
    v = np.linspace(0, 2 * math.pi, 13)
    a, b, c = E.a, E.b, E.c
    s2 = a * a + c * c
    g = metric_closed_form(E, None, v)
    assert np.allclose(g.g_uv, -b * b * c / math.sqrt(s2), atol=1e-14)
    assert np.allclose(g.g_uu, ((s2 + a * b * np.cos(v)) ** 2 + b * b * c * c) / s2, atol=1e-13)
    q = L.c**2 - L.a**2
    gl = metric_closed_form(L, None, v)
    D = q - L.a * L.b * np.cos(v)
    assert np.allclose(-gl.g_uu, (D**2 - (L.b * L.c) ** 2) / q, atol=1e-13)


@pytest.mark.parametrize(
    "params",
    [E, L, SurfaceParams.euclidean(1.5, 1.0, 0.8, 0.3), preset("legendre"), preset("torus")],
    ids=["euclid", "lorentz", "tilt", "legendre", "torus"],
)
def test_closed_form_matches_embedding_oracle(params):
    u, v = np.meshgrid(np.linspace(0, 6, 9), np.linspace(0, 2 * math.pi, 11), indexing="ij")
    g = metric_closed_form(params, u, v)
    o = metric_oracle(params, u, v)
    for x, y in ((g.g_uu, o.g_uu), (g.g_uv, o.g_uv), (g.g_vv, o.g_vv)):
        assert np.max(np.abs(x - y)) < 1e-7


def test_oracle_step_bounds():
    with pytest.raises(ValueError):
        metric_oracle(E, 0.0, 0.0, h=1e-2)


def test_v_derivative_matches_differences():
    v = np.linspace(-3, 3, 17)
    h = 1e-6
    for p in (E, L, SurfaceParams.euclidean(1.5, 1.0, 0.8, 0.3)):
        dg_uu, dg_uv = metric_v_derivative(p, v)
        gp, gm = metric_closed_form(p, None, v + h), metric_closed_form(p, None, v - h)
        assert np.allclose(dg_uu, (gp.g_uu - gm.g_uu) / (2 * h), atol=1e-7)
        assert np.allclose(dg_uv, (gp.g_uv - gm.g_uv) / (2 * h), atol=1e-7)


def test_lapse_closed_forms():
    v = np.linspace(0, 2 * math.pi, 13)
    s = math.hypot(E.a, E.c)
    assert np.allclose(slicing_split(E, None, v).N, (s * s + E.a * E.b * np.cos(v)) / s, atol=1e-13)
    q = math.sqrt(12)
    assert np.allclose(slicing_split(L, None, v).N, (12 - 2 * np.cos(v)) / q, atol=1e-13)
    assert float(slicing_split(E, 0, 0).N) == pytest.approx(4.39 / 1.7, abs=1e-14)


def test_shift_components_are_distinct_when_b_not_one():
    p = SurfaceParams.orthogonal(1.5, 0.5, 0.8)
    th = threading_split(p, 0.0, 0.7)
    assert float(th.M_con) == pytest.approx(float(th.M_v) / 0.25)


params_strategy = st.sampled_from([E, L, SurfaceParams.euclidean(1.5, 1.0, 0.8, 0.3), preset("torus")])


@settings(max_examples=100, deadline=None)
@given(params_strategy, st.floats(-20, 20))
def test_split_identities(p, v):
    g = metric_closed_form(p, None, v)
    th = threading_split(p, None, v)
    sl = slicing_split(p, None, v)
    det = abs(float(g.det))
    assert float(th.M) ** 2 * float(th.gamma_vv) == pytest.approx(det, rel=1e-12)
    assert float(sl.N) ** 2 * float(sl.g_vv) == pytest.approx(det, rel=1e-12)
    for rec in (th.reconstruct(), sl.reconstruct()):
        assert float(rec.g_uu) == pytest.approx(float(g.g_uu), rel=1e-12, abs=1e-12)
        assert float(rec.g_uv) == pytest.approx(float(g.g_uv), rel=1e-12, abs=1e-12)
        assert float(rec.g_vv) == pytest.approx(float(g.g_vv), rel=1e-12, abs=1e-12)


def test_determinant_is_lapse_squared_times_b_squared():
    v = np.linspace(0, 2 * math.pi, 7)
    s = math.hypot(E.a, E.c)
    det = metric_closed_form(E, None, v).det
    assert np.allclose(det, ((s * s + E.a * E.b * np.cos(v)) / s) ** 2, atol=1e-12)
    assert np.allclose(area_element(E, 0, v), (s * s + E.a * E.b * np.cos(v)) / s, atol=1e-12)


def test_areas():
    # 4 pi^2 b sqrt(a^2+c^2) and 4 pi^2 b sqrt(c^2-a^2)
    e = surface_area_one_rev(E)
    assert e.closed_form == pytest.approx(4 * math.pi**2 * 1.7, rel=1e-15)
    assert e.rel_error < 1e-12
    lo = surface_area_one_rev(L)
    assert lo.closed_form == pytest.approx(136.75725018633733, rel=1e-14)
    assert lo.rel_error < 1e-12
    tilt = surface_area_one_rev(SurfaceParams.euclidean(1.5, 1.0, 0.8, 0.3))
    assert tilt.closed_form is None and tilt.rel_error is None
    assert pappus_area(preset("torus")) == pytest.approx(4 * math.pi**2 * 1.5)


def test_orthogonal_grid_coordinate():
    # N^v = -c/sqrt(a^2+c^2) = -8/17 (Euclidean), +c/sqrt(c^2-a^2) (Lorentzian)
    assert float(orthogonal_grid_coordinate(E, 1.0, 0.0)) == pytest.approx(-8 / 17, abs=1e-15)
    assert float(orthogonal_grid_coordinate(L, 1.0, 0.0)) == pytest.approx(4 / math.sqrt(12), abs=1e-14)
    with pytest.raises(ValueError):
        orthogonal_grid_coordinate(SurfaceParams.euclidean(1.5, 1.0, 0.8, 0.3), 0, 0)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([E, L]), st.floats(-7, 7))
def test_orthogonal_direction_is_normal_to_meridians(p, v):
    du, dv = orthogonal_direction(p, v)
    g = metric_closed_form(p, None, v)
    assert abs(float(g.g_uv) * du + float(g.g_vv) * dv) < 1e-12


def test_quadrant_sincos_exact_at_quarter_turns():
    k = np.arange(-8, 9)
    s, c = quadrant_sincos(k * (0.5 * math.pi))
    assert np.all(np.abs(s) == np.abs(np.round(np.sin(k * 0.5 * math.pi))))
    assert np.all(np.abs(c) == np.abs(np.round(np.cos(k * 0.5 * math.pi))))
    v = np.linspace(-30, 30, 1001)
    s, c = quadrant_sincos(v)
    assert np.allclose(s, np.sin(v), atol=1e-14)
    assert np.allclose(c, np.cos(v), atol=1e-14)


def test_threading_requires_admissible():
    p = SurfaceParams.euclidean(1.0, 1.0, 0.01, 0.0)
    # c small but admissible: M^2 > 0 everywhere
    assert float(threading_split(p, 0, math.pi).M) > 0
    with pytest.raises(AdmissibilityError):
        SurfaceParams.euclidean(1.0, 1.0, 0.0, 0.0)
