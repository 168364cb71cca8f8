"""Geodesic flow on the tube surfaces.

The state vector is ``(u, v, du/dlam, dv/dlam)``.  Since the metric depends
on ``v`` only, the Christoffel symbols follow from ``g`` and ``dg/dv``:

    Gamma_{u,uv} = g_uu'/2,  Gamma_{u,vv} = g_uv',  Gamma_{v,uu} = -g_uu'/2

(all other symbols of the first kind vanish), raised with the inverse metric.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpecError
from .metric import metric_closed_form, metric_v_derivative, quadrant_sincos, threading_split
from .ode import Event, OdeSolution, dopri54
from .surface import SurfaceParams, tangents

TWO_PI = 2 * math.pi
_HALF_PI = 0.5 * math.pi

# The integrator's per-step error target is this fraction of the requested
# tolerance, so that conserved-quantity drift over affine spans of ~100
# stays below 100 * tol for both signatures.
LOCAL_TOL_FACTOR = 0.1


class CausalClass(str, enum.Enum):
    SPACELIKE = "spacelike"
    NULL = "null"
    TIMELIKE = "timelike"
    EUCLIDEAN_UNIT = "euclidean"


@dataclass(frozen=True)
class GeodesicState:
    lam: float
    u: float
    v: float
    u_dot: float
    v_dot: float

    def as_array(self):
        return np.array([self.u, self.v, self.u_dot, self.v_dot])

    @classmethod
    def from_array(cls, lam, y):
        return cls(float(lam), float(y[0]), float(y[1]), float(y[2]), float(y[3]))


@dataclass(frozen=True)
class ConservedPair:
    ell: float
    energy: float
    causal_class: CausalClass


@dataclass(frozen=True)
class Christoffel:
    """Gamma^i_{jk} with the upper index first: ``u_uv`` is Gamma^u_{uv}."""

    u_uu: np.ndarray
    u_uv: np.ndarray
    u_vv: np.ndarray
    v_uu: np.ndarray
    v_uv: np.ndarray
    v_vv: np.ndarray


def christoffel(params: SurfaceParams, u, v) -> Christoffel:
    g = metric_closed_form(params, u, v)
    dg_uu, dg_uv = metric_v_derivative(params, v)
    det = g.det
    inv_uu = g.g_vv / det
    inv_uv = -g.g_uv / det
    inv_vv = g.g_uu / det
    # First-kind symbols Gamma_{k,ij}; the vanishing ones are dropped.
    u_uv_1 = 0.5 * dg_uu
    u_vv_1 = dg_uv
    v_uu_1 = -0.5 * dg_uu
    zero = np.zeros_like(det)
    return Christoffel(
        u_uu=inv_uv * v_uu_1,
        u_uv=inv_uu * u_uv_1,
        u_vv=inv_uu * u_vv_1,
        v_uu=inv_vv * v_uu_1,
        v_uv=inv_uv * u_uv_1,
        v_vv=inv_uv * u_vv_1 + zero,
    )


def _scalar_sincos(v):
    k = round(v / _HALF_PI)
    r = v - k * _HALF_PI
    sr, cr = math.sin(r), math.cos(r)
    q = k % 4
    if q == 0:
        return sr, cr
    if q == 1:
        return cr, -sr
    if q == 2:
        return -sr, -cr
    return -cr, sr


def geodesic_rhs(params: SurfaceParams):
    """Right-hand side of the first-order geodesic system.

    Accepts a flat array of k stacked states laid out as (u, v, u', v') blocks;
    a single state takes a scalar path that avoids array overhead.
    """
    a, b, c = params.a, params.b, params.c
    alpha, delta = params.tilt_components()
    sigma = params.time_sign
    G = b * b
    K = a * alpha + sigma * c * delta
    ab2 = (alpha * b) ** 2
    c2 = sigma * c * c

    def scalar(y):
        ud, vd = y[2], y[3]
        sv, cv = _scalar_sincos(y[1])
        r = a + b * cv
        E = r * r + ab2 * sv * sv + c2
        F = alpha * G + b * cv * K
        half_dE = -b * sv * r + ab2 * sv * cv
        dF = -b * sv * K
        det = E * G - F * F
        udd = -(F * half_dE * ud * ud + 2 * G * half_dE * ud * vd + G * dF * vd * vd) / det
        vdd = -(-E * half_dE * ud * ud - 2 * F * half_dE * ud * vd - F * dF * vd * vd) / det
        return np.array([ud, vd, udd, vdd])

    def rhs(lam, y):
        if y.shape[0] == 4:
            return scalar(y)
        u, v, ud, vd = y.reshape(4, -1)
        Gm = christoffel(params, None, v)
        udd = -(Gm.u_uu * ud * ud + 2 * Gm.u_uv * ud * vd + Gm.u_vv * vd * vd)
        vdd = -(Gm.v_uu * ud * ud + 2 * Gm.v_uv * ud * vd + Gm.v_vv * vd * vd)
        return np.concatenate([ud, vd, udd, vdd])

    return rhs


def conserved(params: SurfaceParams, s: GeodesicState) -> ConservedPair:
    """Screw-angular momentum ell and energy E = g(U, U)/2.

    ell = g(U, d_u) = M^2 (u_dot + M_v v_dot) in the Euclidean case and
    ell = -g(U, d_u) = M^2 (u_dot - M_v v_dot) in the Lorentzian case, so that
    future-directed motion along the threads carries ell > 0.
    """
    ell, energy = conserved_arrays(params, s.v, s.u_dot, s.v_dot)
    return ConservedPair(float(ell), float(energy), causal_class(params, float(energy)))


def conserved_arrays(params: SurfaceParams, v, u_dot, v_dot):
    g = metric_closed_form(params, None, v)
    ell = g.g_uu * u_dot + g.g_uv * v_dot
    if params.is_lorentzian:
        ell = -ell
    energy = 0.5 * g.quadratic(u_dot, v_dot)
    return ell, energy


def causal_class(params: SurfaceParams, energy: float, null_tol: float = 1e-12) -> CausalClass:
    if not params.is_lorentzian:
        return CausalClass.EUCLIDEAN_UNIT
    if abs(energy) <= null_tol:
        return CausalClass.NULL
    return CausalClass.SPACELIKE if energy > 0 else CausalClass.TIMELIKE


@dataclass
class GeodesicTrace:
    lam: np.ndarray
    u: np.ndarray
    v: np.ndarray
    u_dot: np.ndarray
    v_dot: np.ndarray
    ell: np.ndarray
    energy: np.ndarray
    drift_tol: float = 1e-8
    events: list | None = None

    def __len__(self):
        return len(self.lam)

    def state(self, i) -> GeodesicState:
        return GeodesicState(
            float(self.lam[i]), float(self.u[i]), float(self.v[i]), float(self.u_dot[i]), float(self.v_dot[i])
        )

    @property
    def max_ell_drift(self) -> float:
        return float(np.max(np.abs(self.ell - self.ell[0])))

    @property
    def max_energy_drift(self) -> float:
        return float(np.max(np.abs(self.energy - self.energy[0])))

    @property
    def u_wraps(self) -> int:
        """Completed azimuthal revolutions from the start."""
        return int(math.floor(abs(self.u[-1] - self.u[0]) / TWO_PI))

    @property
    def v_wraps(self) -> int:
        """Completed meridian revolutions from the start."""
        return int(math.floor(abs(self.v[-1] - self.v[0]) / TWO_PI))

    @property
    def flagged(self) -> bool:
        return max(self.max_ell_drift, self.max_energy_drift) > self.drift_tol

    def rows(self):
        for i in range(len(self.lam)):
            yield (self.lam[i], self.u[i], self.v[i], self.u_dot[i], self.v_dot[i], self.ell[i], self.energy[i])


def _check_tol(tol):
    if not 1e-13 <= tol <= 1e-6:
        raise ValueError(f"tolerance {tol} outside [1e-13, 1e-6]")


def _trace_from_solution(params, sol: OdeSolution, drift_tol, column=0, k=1) -> GeodesicTrace:
    y = sol.y.reshape(len(sol.t), 4, k)[:, :, column]
    ell, energy = conserved_arrays(params, y[:, 1], y[:, 2], y[:, 3])
    return GeodesicTrace(
        sol.t.copy(), y[:, 0].copy(), y[:, 1].copy(), y[:, 2].copy(), y[:, 3].copy(),
        np.asarray(ell), np.asarray(energy), drift_tol,
        [(t, GeodesicState.from_array(t, ye)) for _, t, ye in sol.events],
    )


def integrate(
    params: SurfaceParams,
    s0: GeodesicState,
    lambda_end: float,
    tol: float = 1e-10,
    events=(),
    drift_tol: float = 1e-8,
) -> GeodesicTrace:
    """Integrate one geodesic from ``s0`` to affine parameter ``lambda_end``.

    ``events`` are ``cavageo.ode.Event`` objects evaluated on the 4-vector
    state.  Raises ``IntegrationStall`` (with the partial solution) when the
    step size underflows.
    """
    _check_tol(tol)
    local = tol * LOCAL_TOL_FACTOR
    sol = dopri54(
        geodesic_rhs(params), (s0.lam, lambda_end), s0.as_array(), rtol=local, atol=local, events=events
    )
    return _trace_from_solution(params, sol, drift_tol)


def integrate_batch(
    params: SurfaceParams,
    states,
    lambda_span: float,
    tol: float = 1e-10,
    drift_tol: float = 1e-8,
) -> list[GeodesicTrace]:
    """Integrate several geodesics together with a shared step sequence.

    All states must start at the same affine parameter.  Results are in
    input order.  The step size is governed by the hardest trajectory, so
    each member is integrated at least as accurately as it would be alone.
    """
    _check_tol(tol)
    states = list(states)
    if not states:
        return []
    lam0 = states[0].lam
    if any(s.lam != lam0 for s in states):
        raise ValueError("batched states must share the starting affine parameter")
    k = len(states)
    y0 = np.stack([s.as_array() for s in states], axis=1).reshape(-1)
    local = tol * LOCAL_TOL_FACTOR
    sol = dopri54(geodesic_rhs(params), (lam0, lam0 + lambda_span), y0, rtol=local, atol=local)
    return [_trace_from_solution(params, sol, drift_tol, j, k) for j in range(k)]


# ---------------------------------------------------------------------------
# initial data


@dataclass(frozen=True)
class InitialSpec:
    """How to aim a geodesic in the threading frame at the anchor point.

    kind: "angle" (Euclidean, angle beta from the meridian-normal direction),
    "timelike" / "spacelike" (Lorentzian, rapidity alpha), "null" (sign +-1),
    or "boost_aligned" (value "vertical" or "horizontal").
    """

    kind: str
    value: object = 0.0
    speed: float = 1.0

    @classmethod
    def angle(cls, beta, speed=1.0):
        return cls("angle", float(beta), speed)

    @classmethod
    def timelike(cls, alpha, speed=1.0):
        return cls("timelike", float(alpha), speed)

    @classmethod
    def spacelike(cls, alpha, speed=1.0):
        return cls("spacelike", float(alpha), speed)

    @classmethod
    def null(cls, sign=+1, scale=1.0):
        if sign not in (1, -1):
            raise InvalidSpecError("null sign must be +1 or -1")
        return cls("null", int(sign), scale)

    @classmethod
    def boost_aligned(cls, which):
        if which not in ("vertical", "horizontal"):
            raise InvalidSpecError("boost_aligned expects 'vertical' or 'horizontal'")
        return cls("boost_aligned", which, 1.0)


def frame_components_to_velocity(params: SurfaceParams, v, U_hat_u, U_hat_v):
    """Coordinate velocity from threading-frame components.

    Euclidean:  du/dlam = U^u/M - M_v U^v / sqrt(gamma_vv)
    Lorentzian: du/dlam = U^u/M + M_v U^v / sqrt(gamma_vv)
    dv/dlam = U^v / sqrt(gamma_vv) in both.
    """
    th = threading_split(params, 0.0, v)
    root = np.sqrt(th.gamma_vv)
    sign = 1.0 if params.is_lorentzian else -1.0
    u_dot = U_hat_u / th.M + sign * th.M_v * U_hat_v / root
    v_dot = U_hat_v / root
    return float(u_dot), float(v_dot)


def initial_data(
    params: SurfaceParams, spec: InitialSpec, anchor=(0.0, 0.0), lam0: float = 0.0
) -> GeodesicState:
    """Build a state at ``anchor = (u0, v0)`` from a frame-based specification."""
    u0, v0 = float(anchor[0]), float(anchor[1])
    kind = spec.kind
    if kind == "angle":
        if params.is_lorentzian:
            raise InvalidSpecError("angle data is Euclidean; use timelike/spacelike/null")
        sb, cb = quadrant_sincos(spec.value)
        comps = (spec.speed * float(sb), spec.speed * float(cb))
    elif kind in ("timelike", "spacelike", "null", "boost_aligned"):
        if not params.is_lorentzian:
            raise InvalidSpecError(f"{kind} data needs the Lorentzian signature")
        if kind == "timelike":
            comps = (spec.speed * math.cosh(spec.value), spec.speed * math.sinh(spec.value))
        elif kind == "spacelike":
            comps = (spec.speed * math.sinh(spec.value), spec.speed * math.cosh(spec.value))
        elif kind == "null":
            comps = (spec.speed, spec.speed * spec.value)
        else:
            u_dot, v_dot = boost_aligned_velocity(params, spec.value, v0)
            return GeodesicState(lam0, u0, v0, u_dot, v_dot)
    else:
        raise InvalidSpecError(f"unknown initial-data kind {kind!r}")
    u_dot, v_dot = frame_components_to_velocity(params, v0, *comps)
    return GeodesicState(lam0, u0, v0, u_dot, v_dot)


def boost_aligned_ratio(params: SurfaceParams, which: str, v0: float = 0.0) -> float:
    """dv/du of the coordinate direction whose image is vertical or horizontal.

    Only defined where the tangent plane is vertical (sin v0 = 0); there the
    surface tangents have no radial component.
    """
    if abs(math.sin(v0)) > 1e-12:
        raise InvalidSpecError("boost-aligned data needs an anchor on an equator")
    X_u, X_v = tangents(params, 0.0, v0)
    # at u = 0 the azimuthal direction is the y axis and time is the third slot
    idx = 1 if which == "vertical" else 2
    return float(-X_u[idx] / X_v[idx])


def boost_aligned_velocity(params: SurfaceParams, which: str, v0: float = 0.0):
    """Unit tangent along the inertial vertical (timelike) or horizontal (spacelike)."""
    if which not in ("vertical", "horizontal"):
        raise InvalidSpecError("boost_aligned expects 'vertical' or 'horizontal'")
    ratio = boost_aligned_ratio(params, which, v0)
    g = metric_closed_form(params, None, v0)
    norm2 = float(g.quadratic(1.0, ratio))
    scale = 1.0 / math.sqrt(abs(norm2))
    return scale, scale * ratio


def boost_aligned_ratio_closed_form(params: SurfaceParams, which: str) -> float:
    """Closed forms of ``boost_aligned_ratio`` at the origin."""
    a, b, c = params.a, params.b, params.c
    q = math.sqrt(c * c - a * a)
    if which == "vertical":
        return -(a + b) * q / (b * c)
    return -c * q / (a * b)
