"""Induced metric, its two orthogonal decompositions and the area element.

All pointwise functions broadcast over array-valued ``u`` and ``v``.  The
metric depends on ``v`` alone (``d/du`` is a Killing field), so ``u`` is
accepted only for a uniform call signature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import AdmissibilityError
from .surface import Signature, SurfaceParams, ambient_inner, embed


_HALF_PI = 0.5 * math.pi


def quadrant_sincos(v):
    """sin and cos with the argument reduced by whole quarter turns first.

    Multiples of the floating-point pi/2 map to exact zeros and units, so
    the equators v = 0, pi and the polar helices are exact invariant sets of
    the discretised geodesic flow (otherwise sin(fl(pi)) ~ 1e-16 seeds the
    instability of the inner equator).  Elsewhere the result differs from
    numpy's by a few ulp.
    """
    v = np.asarray(v, dtype=float)
    k = np.rint(v / _HALF_PI)
    r = v - k * _HALF_PI
    sr, cr = np.sin(r), np.cos(r)
    q = np.mod(k, 4).astype(int)
    s = np.choose(q, [sr, cr, -sr, -cr])
    c = np.choose(q, [cr, -sr, -cr, sr])
    return s, c


@dataclass(frozen=True)
class Metric2:
    g_uu: np.ndarray
    g_uv: np.ndarray
    g_vv: np.ndarray
    signature: Signature

    @property
    def det(self):
        return self.g_uu * self.g_vv - self.g_uv**2

    def as_matrix(self):
        return np.array([[self.g_uu, self.g_uv], [self.g_uv, self.g_vv]], dtype=float)

    def quadratic(self, du, dv):
        return self.g_uu * du * du + 2 * self.g_uv * du * dv + self.g_vv * dv * dv


@dataclass(frozen=True)
class ThreadingSplit:
    """Completion of the square on du.

    Euclidean:  ds^2 =  M^2 (du + M_v dv)^2 + gamma_vv dv^2
    Lorentzian: ds^2 = -M^2 (du - M_v dv)^2 + gamma_vv dv^2
    with M_v = g_uv / M^2 in both cases.
    """

    M: np.ndarray
    M_v: np.ndarray
    M_con: np.ndarray
    gamma_vv: np.ndarray
    signature: Signature

    def reconstruct(self) -> Metric2:
        M2 = self.M**2
        sign = -1.0 if self.signature is Signature.LORENTZIAN else 1.0
        g_uu = sign * M2
        g_uv = M2 * self.M_v
        g_vv = sign * M2 * self.M_v**2 + self.gamma_vv
        return Metric2(g_uu, g_uv, g_vv, self.signature)


@dataclass(frozen=True)
class SlicingSplit:
    """Completion of the square on dv: ds^2 = +-N^2 du^2 + g_vv (dv + N^v du)^2."""

    N: np.ndarray
    N_con: np.ndarray
    N_cov: np.ndarray
    g_vv: np.ndarray
    signature: Signature

    def reconstruct(self) -> Metric2:
        sign = -1.0 if self.signature is Signature.LORENTZIAN else 1.0
        g_uu = sign * self.N**2 + self.g_vv * self.N_con**2
        return Metric2(g_uu, self.N_cov, self.g_vv, self.signature)


def metric_closed_form(params: SurfaceParams, u, v) -> Metric2:
    """First fundamental form from the closed-form expressions.

    With the sin(v) direction written as alpha phi-hat + delta z-hat and
    ambient time sign sigma:
        g_uu = (a + b cos v)^2 + alpha^2 b^2 sin^2 v + sigma c^2
        g_uv = alpha b^2 + b cos v (a alpha + sigma c delta)
        g_vv = b^2
    which is the general-tilt Euclidean metric for (alpha, delta) =
    (-sin psi, cos psi) and the Lorentzian tube for (cosh beta, sinh beta).
    """
    v = np.asarray(v, dtype=float)
    if u is not None:
        v = np.broadcast_arrays(np.asarray(u, dtype=float), v)[1]
    a, b, c = params.a, params.b, params.c
    alpha, delta = params.tilt_components()
    sigma = params.time_sign
    sv, cv = quadrant_sincos(v)
    g_uu = (a + b * cv) ** 2 + (alpha * b * sv) ** 2 + sigma * c * c
    g_uv = alpha * b * b + b * cv * (a * alpha + sigma * c * delta)
    g_vv = np.full_like(g_uu, b * b)
    return Metric2(g_uu, g_uv, g_vv, params.signature)


def metric_v_derivative(params: SurfaceParams, v):
    """(d g_uu/dv, d g_uv/dv); g_vv is constant."""
    v = np.asarray(v, dtype=float)
    a, b, c = params.a, params.b, params.c
    alpha, delta = params.tilt_components()
    sigma = params.time_sign
    sv, cv = quadrant_sincos(v)
    dg_uu = -2 * b * sv * (a + b * cv) + 2 * (alpha * b) ** 2 * sv * cv
    dg_uv = -b * sv * (a * alpha + sigma * c * delta)
    return dg_uu, dg_uv


def metric_oracle(params: SurfaceParams, u, v, h=1e-5) -> Metric2:
    """Metric from central differences of the embedding.

    Independent of ``metric_closed_form``: only ``embed`` and the flat
    ambient metric are used.
    """
    if not 1e-7 <= h <= 1e-3:
        raise ValueError(f"finite-difference step {h} outside [1e-7, 1e-3]")
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    X_u = (embed(params, u + h, v) - embed(params, u - h, v)) / (2 * h)
    X_v = (embed(params, u, v + h) - embed(params, u, v - h)) / (2 * h)
    return Metric2(
        ambient_inner(params, X_u, X_u),
        ambient_inner(params, X_u, X_v),
        ambient_inner(params, X_v, X_v),
        params.signature,
    )


def threading_split(params: SurfaceParams, u, v) -> ThreadingSplit:
    g = metric_closed_form(params, u, v)
    if params.is_lorentzian:
        M2 = -g.g_uu
        if np.any(M2 <= 0):
            raise AdmissibilityError("M^2 <= 0: the Killing orbits are not timelike here")
    else:
        M2 = g.g_uu
    M_v = g.g_uv / M2
    gamma_vv = g.g_vv - g.g_uv**2 / g.g_uu
    return ThreadingSplit(np.sqrt(M2), M_v, M_v / g.g_vv, gamma_vv, params.signature)


def slicing_split(params: SurfaceParams, u, v) -> SlicingSplit:
    g = metric_closed_form(params, u, v)
    N2 = g.g_uu - g.g_uv**2 / g.g_vv
    if params.is_lorentzian:
        N2 = -N2
        if np.any(N2 <= 0):
            raise AdmissibilityError("slicing lapse vanishes")
    N_con = g.g_uv / g.g_vv
    return SlicingSplit(np.sqrt(N2), N_con, g.g_uv, g.g_vv, params.signature)


def area_element(params: SurfaceParams, u, v):
    """|det g|^(1/2)."""
    return np.sqrt(np.abs(metric_closed_form(params, u, v).det))


@dataclass(frozen=True)
class AreaResult:
    quadrature: float
    abs_error: float
    closed_form: float | None

    @property
    def rel_error(self):
        if self.closed_form is None:
            return None
        return abs(self.quadrature - self.closed_form) / abs(self.closed_form)


def pappus_area(params: SurfaceParams) -> float:
    """Profile circumference times helix arclength per revolution."""
    return (2 * math.pi * params.b) * (2 * math.pi * params.helix_length_scale)


def surface_area_one_rev(params: SurfaceParams, tol=1e-10) -> AreaResult:
    """Area of u in [0, 2 pi], v in [0, 2 pi] by adaptive Gauss-Kronrod in v.

    The area element is independent of u, so the u-integral is exact.
    The closed form is attached only for the orthogonally tilted family.
    """
    val, err = quad(
        lambda v: float(area_element(params, 0.0, v)),
        0.0,
        2 * math.pi,
        epsabs=tol,
        epsrel=tol,
        limit=200,
    )
    closed = pappus_area(params) if params.is_orthogonal else None
    return AreaResult(2 * math.pi * val, 2 * math.pi * err, closed)


def orthogonal_grid_coordinate(params: SurfaceParams, u, v):
    """v_perp = v + N^v u, constant along the curves orthogonal to the meridians."""
    if not params.is_orthogonal:
        raise ValueError("v_perp needs a constant shift: orthogonally tilted family only")
    N_con = slicing_split(params, 0.0, 0.0).N_con
    return np.asarray(v, dtype=float) + float(N_con) * np.asarray(u, dtype=float)


def orthogonal_direction(params: SurfaceParams, v=0.0):
    """Coordinate components (du, dv) of d_u - N^v d_v, normal to the meridians."""
    N_con = slicing_split(params, 0.0, v).N_con
    return np.array([1.0, -float(N_con)])
