"""Screw-symmetric tube surfaces in Euclidean space and Minkowski spacetime.

The surface is swept out by a circle of radius ``b`` whose centre runs along
the helix ``(a cos u, a sin u, c u)``.  In the Euclidean family the plane of
the circle is tilted back by ``psi`` from the vertical; in the Lorentzian
family the third coordinate is inertial time and the circle lies in the local
rest space of the (timelike) central helix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import AdmissibilityError


class Signature(str, enum.Enum):
    EUCLIDEAN = "euclid"
    LORENTZIAN = "lorentz"


# v-grid used to locate the worst point of the Lorentzian admissibility
# function before polishing it with a bounded scalar minimisation.
_ADMISSIBILITY_SAMPLES = 4097


def lorentz_margin(a, b, c, v):
    """(c^2-a^2-ab cos v)^2 - b^2 c^2; must stay positive for a timelike tube."""
    d = c * c - a * a - a * b * np.cos(v)
    return d * d - b * b * c * c


def check_admissibility(a, b, c, signature, psi=0.0):
    """Return ``(ok, worst_v, margin)`` for a raw parameter set.

    ``margin`` is the minimum over v of the quantity that must stay positive:
    ``a^2 + c^2 + a b cos v`` (Euclidean) or ``lorentz_margin`` (Lorentzian).
    """
    signature = Signature(signature)
    if not (a > 0 and b > 0):
        return False, None, min(a, b)
    if signature is Signature.EUCLIDEAN:
        margin = a * a + c * c - a * b
        return margin > 0, math.pi, margin
    if not c > a:
        return False, None, c - a
    from scipy.optimize import minimize_scalar

    vs = np.linspace(0.0, 2 * math.pi, _ADMISSIBILITY_SAMPLES)
    vals = lorentz_margin(a, b, c, vs)
    i = int(np.argmin(vals))
    lo = vs[max(i - 1, 0)]
    hi = vs[min(i + 1, len(vs) - 1)]
    if hi > lo:
        res = minimize_scalar(
            lambda x: lorentz_margin(a, b, c, x),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12},
        )
        v_best, m_best = float(res.x), float(res.fun)
        if m_best > vals[i]:
            v_best, m_best = float(vs[i]), float(vals[i])
    else:
        v_best, m_best = float(vs[i]), float(vals[i])
    v_best = math.remainder(v_best, 2 * math.pi)
    return m_best > 0, v_best, m_best


@dataclass(frozen=True)
class SurfaceParams:
    """Parameters of one member of the surface family.

    a: helix radius, b: profile-circle radius, c: rise per radian of azimuth,
    psi: tilt-back angle of the profile plane (Euclidean only; the Lorentzian
    tilt is always the rapidity of the central helix).
    """

    a: float
    b: float
    c: float
    psi: float = 0.0
    signature: Signature = Signature.EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "signature", Signature(self.signature))
        for name in ("a", "b", "c", "psi"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.signature is Signature.LORENTZIAN:
            object.__setattr__(self, "psi", 0.0)
        ok, worst_v, margin = check_admissibility(
            self.a, self.b, self.c, self.signature, self.psi
        )
        if not ok:
            if self.signature is Signature.EUCLIDEAN:
                msg = (
                    f"need a > 0, b > 0 and a^2 + c^2 > a b; "
                    f"got a={self.a}, b={self.b}, c={self.c}"
                )
            elif self.c <= self.a:
                msg = f"Lorentzian tube needs c > a > 0 (timelike helix); got a={self.a}, c={self.c}"
            else:
                msg = (
                    "Lorentzian tube needs (c^2-a^2-ab cos v)^2 > b^2 c^2 for all v; "
                    f"minimum {margin:.6g} at v={worst_v:.6g}"
                )
            raise AdmissibilityError(msg, worst_v=worst_v, margin=margin)

    @classmethod
    def euclidean(cls, a, b, c, psi=0.0):
        return cls(a, b, c, psi, Signature.EUCLIDEAN)

    @classmethod
    def orthogonal(cls, a, b, c):
        """Euclidean member whose profile circle is normal to the helix."""
        return cls(a, b, c, math.atan2(c, a), Signature.EUCLIDEAN)

    @classmethod
    def lorentzian(cls, a, b, c):
        return cls(a, b, c, 0.0, Signature.LORENTZIAN)

    @property
    def is_lorentzian(self) -> bool:
        return self.signature is Signature.LORENTZIAN

    @property
    def inclination(self) -> float:
        """Euclidean inclination of the central helix above the horizontal."""
        return math.atan2(self.c, self.a)

    @property
    def is_orthogonal(self) -> bool:
        if self.is_lorentzian:
            return True
        return abs(self.psi - self.inclination) <= 1e-12

    # Lorentzian kinematics of the central helix.
    @property
    def speed(self) -> float:
        return self.a / self.c

    @property
    def rapidity(self) -> float:
        return math.atanh(self.a / self.c)

    @property
    def gamma(self) -> float:
        return self.c / math.sqrt(self.c * self.c - self.a * self.a)

    @property
    def helix_length_scale(self) -> float:
        """sqrt(a^2 + c^2) or sqrt(c^2 - a^2): arclength of the helix per radian."""
        if self.is_lorentzian:
            return math.sqrt(self.c * self.c - self.a * self.a)
        return math.hypot(self.a, self.c)

    def tilt_components(self):
        """Components ``(alpha, delta)`` of the sin(v) direction on (phi-hat, z-hat)."""
        if self.is_lorentzian:
            s = self.helix_length_scale
            return self.c / s, self.a / s
        return -math.sin(self.psi), math.cos(self.psi)

    @property
    def time_sign(self) -> float:
        """Sign of the third diagonal entry of the ambient flat metric."""
        return -1.0 if self.is_lorentzian else 1.0


class SurfacePoint(NamedTuple):
    u: float
    v: float

    def reduced(self) -> "SurfacePoint":
        """Copy with v folded into (-pi, pi]; only for display."""
        return SurfacePoint(self.u, reduce_angle(self.v))


def reduce_angle(v):
    """Fold an angle (or array) into (-pi, pi]."""
    w = np.mod(np.asarray(v, dtype=float) + math.pi, 2 * math.pi) - math.pi
    w = np.where(w == -math.pi, math.pi, w)
    return float(w) if np.ndim(w) == 0 else w


def orthogonal_tilt(params: SurfaceParams) -> SurfaceParams:
    """Return the member of the Euclidean family with psi equal to the helix inclination."""
    if params.is_lorentzian:
        raise ValueError("the Lorentzian tilt is fixed to the rapidity; nothing to set")
    return replace(params, psi=params.inclination)


def ambient_inner(params: SurfaceParams, x, y):
    """Flat inner product diag(1, 1, +-1) over the last axis."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] + params.time_sign * x[..., 2] * y[..., 2]


def embed(params: SurfaceParams, u, v):
    """Cartesian point(s) ``(x, y, z)`` or ``(x, y, t)`` on the surface.

    ``u`` and ``v`` broadcast; the result has a trailing axis of length 3.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    u, v = np.broadcast_arrays(u, v)
    alpha, delta = params.tilt_components()
    a, b, c = params.a, params.b, params.c
    cu, su = np.cos(u), np.sin(u)
    r = a + b * np.cos(v)
    w = b * np.sin(v)
    x = r * cu - alpha * w * su
    y = r * su + alpha * w * cu
    z = delta * w + c * u
    return np.stack([x, y, z], axis=-1)


def tangents(params: SurfaceParams, u, v):
    """Analytic coordinate tangents ``(X_u, X_v)`` of the embedding."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    u, v = np.broadcast_arrays(u, v)
    alpha, delta = params.tilt_components()
    a, b, c = params.a, params.b, params.c
    cu, su = np.cos(u), np.sin(u)
    cv, sv = np.cos(v), np.sin(v)
    r = a + b * cv
    # X_u = r phi_hat - alpha b sin v rho_hat + c z_hat
    X_u = np.stack([-r * su - alpha * b * sv * cu, r * cu - alpha * b * sv * su, np.full_like(r, c)], axis=-1)
    # X_v = -b sin v rho_hat + b cos v (alpha phi_hat + delta z_hat)
    X_v = np.stack(
        [-b * sv * cu - alpha * b * cv * su, -b * sv * su + alpha * b * cv * cu, delta * b * cv], axis=-1
    )
    return X_u, X_v


def helix_point(params: SurfaceParams, phi):
    """Point(s) on the central helix at azimuth ``phi``."""
    phi = np.asarray(phi, dtype=float)
    return np.stack(
        [params.a * np.cos(phi), params.a * np.sin(phi), params.c * phi], axis=-1
    )


PRESETS = {
    "euclid-canonical": lambda: SurfaceParams.orthogonal(1.5, 1.0, 0.8),
    "lorentz-canonical": lambda: SurfaceParams.lorentzian(2.0, 1.0, 4.0),
    "legendre": lambda: SurfaceParams.euclidean(1.5, 1.0, 5.0 / (2 * math.pi), 0.0),
    "torus": lambda: SurfaceParams.euclidean(1.5, 1.0, 0.0, 0.0),
}


def preset(name: str) -> SurfaceParams:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}"
        ) from None
