"""Closed-form curvature of the orthogonally tilted tubes.

Principal curvatures are taken with respect to the unit normal pointing
towards the central helix, so the meridian curvature is ``+1/b``.

Sign conventions for the Lorentzian tube: ``gaussian_curvature`` is the
product k1 k2 of the principal curvatures, and ``scalar_curvature`` returns
R = -2 K, which is positive on the outer half (cos v > 0).  That R equals the
scalar curvature of the induced metric taken with overall signature
(+, -), i.e. minus the value obtained from ds^2 with d_u timelike negative.
"""

from __future__ import annotations

import numpy as np

from .surface import SurfaceParams


def _require_orthogonal(params: SurfaceParams):
    if not params.is_orthogonal:
        raise ValueError(
            "closed-form curvature exists only for the orthogonally tilted family; "
            "use cavageo.validate.second_fundamental_form_oracle"
        )


def _tube_denominator(params: SurfaceParams, v):
    """a^2 + c^2 + a b cos v (Euclidean) or c^2 - a^2 - a b cos v (Lorentzian)."""
    a, b = params.a, params.b
    s2 = params.helix_length_scale**2
    sign = -1.0 if params.is_lorentzian else 1.0
    return s2 + sign * a * b * np.cos(v)


def principal_curvatures(params: SurfaceParams, u, v):
    """(k1, k2): along the meridians and along their orthogonal trajectories."""
    _require_orthogonal(params)
    v = np.asarray(v, dtype=float)
    if u is not None:
        v = np.broadcast_arrays(np.asarray(u, dtype=float), v)[1]
    a, b = params.a, params.b
    k2 = a * np.cos(v) / _tube_denominator(params, v)
    if params.is_lorentzian:
        k2 = -k2
    return np.full_like(k2, 1.0 / b), k2


def gaussian_curvature(params: SurfaceParams, u, v):
    k1, k2 = principal_curvatures(params, u, v)
    return k1 * k2


def scalar_curvature(params: SurfaceParams, u, v):
    """R = 2 K (Euclidean) or R = -2 K (Lorentzian); sign of cos v in both."""
    K = gaussian_curvature(params, u, v)
    return -2.0 * K if params.is_lorentzian else 2.0 * K


def orthogonal_trajectory_radius(params: SurfaceParams, u, v):
    """1/k2: radius of curvature of the lines of curvature crossing the meridians."""
    _, k2 = principal_curvatures(params, u, v)
    with np.errstate(divide="ignore"):
        return 1.0 / k2


def curvature_extremes(params: SurfaceParams):
    """R at the outer (v=0) and inner (v=pi) equators."""
    return (
        float(scalar_curvature(params, 0.0, 0.0)),
        float(scalar_curvature(params, 0.0, np.pi)),
    )
