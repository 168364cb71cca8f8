"""Quadratures and searches built on the geodesic flow.

* zero screw-angular-momentum curves and their azimuthal gain per meridian
  revolution (the synchronization gap in the Lorentzian case),
* the azimuthal advance per radial oscillation of bounded orbits and the
  search for orbits that close after whole numbers of revolutions,
* the pair of null geodesics leaving the outer equator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .geodesic import GeodesicTrace, InitialSpec, conserved, initial_data, integrate
from .metric import metric_closed_form, metric_v_derivative, threading_split
from .ode import Event
from .surface import SurfaceParams, embed

TWO_PI = 2 * math.pi
_QUAD = dict(epsabs=1e-13, epsrel=1e-13, limit=400)


def zero_ell_slope(params: SurfaceParams, v):
    """du/dv along curves with zero screw-angular momentum: -M_v or +M_v."""
    M_v = threading_split(params, 0.0, v).M_v
    return M_v if params.is_lorentzian else -M_v


def zero_ell_quadrature(params: SurfaceParams, v0: float, v1: float) -> float:
    """Azimuthal gain of a zero-ell curve between meridian angles v0 and v1."""
    val, _ = quad(lambda v: float(zero_ell_slope(params, v)), v0, v1, **_QUAD)
    return val


def delta_u_per_revolution(params: SurfaceParams) -> float:
    return zero_ell_quadrature(params, 0.0, TWO_PI)


def cumulative_zero_ell_azimuth(params: SurfaceParams, v, delta_u=None):
    """Cumulative antiderivative AC(v) of the zero-ell slope with AC(0) = 0.

    Writing v = w + 2 pi k with w in [-pi, pi), AC(v) = A(w) + k Delta u
    where A is the antiderivative on [-pi, pi) vanishing at 0, so that
    AC(v + 2 pi) = AC(v) + Delta u.
    """
    if delta_u is None:
        delta_u = delta_u_per_revolution(params)
    v_arr = np.atleast_1d(np.asarray(v, dtype=float))
    k = np.floor((v_arr + math.pi) / TWO_PI)
    w = v_arr - TWO_PI * k
    out = np.array([zero_ell_quadrature(params, 0.0, wi) for wi in w]) + k * delta_u
    return float(out[0]) if np.ndim(v) == 0 else out


def _zero_ell_start(params: SurfaceParams):
    spec = InitialSpec.spacelike(0.0) if params.is_lorentzian else InitialSpec.angle(0.0)
    return initial_data(params, spec)


def _v_target_event(target, direction=+1):
    return Event(lambda t, y: y[1] - target, direction=direction, terminal=True)


def zero_ell_geodesic_delta_u(params: SurfaceParams, tol: float = 1e-12) -> float:
    """Same increment as ``delta_u_per_revolution`` by integrating the geodesic ODE.

    Starts on the outer equator with zero screw-angular momentum and stops
    when v first reaches 2 pi.
    """
    s0 = _zero_ell_start(params)
    trace = integrate(params, s0, 1e4, tol=tol, events=[_v_target_event(TWO_PI)])
    if not trace.events:
        raise RuntimeError("zero-ell geodesic did not complete a meridian revolution")
    return trace.events[-1][1].u - s0.u


# ---------------------------------------------------------------------------
# bounded orbits


@dataclass(frozen=True)
class RadialPeriod:
    """One full radial oscillation: affine length and azimuthal advance."""

    lam: float
    u: float
    turning_point: float


def _g_uu_difference(params: SurfaceParams, v, d):
    """g_uu(v) - g_uu(v - d) without cancellation for small d."""
    alpha, _ = params.tilt_components()
    a, b = params.a, params.b
    w = v - d
    d_cos = -2.0 * math.sin(0.5 * (v + w)) * math.sin(0.5 * d)
    d_sin2 = math.sin(v + w) * math.sin(d)
    return d_cos * (2 * a * b + b * b * (math.cos(v) + math.cos(w))) + alpha**2 * b * b * d_sin2


def _g_uu(params: SurfaceParams, v):
    return float(metric_closed_form(params, None, v).g_uu)


def radial_period(params: SurfaceParams, energy: float, ell: float) -> RadialPeriod:
    """Affine period and azimuthal advance of a bounded orbit about the outer equator.

    Over one oscillation the M_v v_dot part of u_dot integrates to zero,
    leaving Delta u = 4 int_0^{v*} (ell / M^2) / v_dot dv with
    v_dot = sqrt(2 (E - V) / gamma_vv).  The turning point solves
    g_uu(v*) = +-ell^2 / (2E), and 2 (E - V(v)) = ell^2 (g_uu(v) - g_uu(v*)) /
    (g_uu(v) g_uu(v*)) is evaluated in difference form.  The substitution
    v = v* sin(theta) removes the inverse-square-root singularity at v*.
    """
    if ell == 0 or energy == 0:
        raise ValueError("orbit is not radially bounded")
    target = 0.5 * ell * ell / energy
    if params.is_lorentzian:
        target = -target

    def f(v):
        return _g_uu(params, v) - target

    f0, fpi = f(0.0), f(math.pi)
    if f0 * fpi > 0:
        raise ValueError("orbit is not radially bounded")
    if f0 == 0.0:
        raise ValueError("circular orbit on the outer equator has no radial period")
    vstar = brentq(f, 0.0, math.pi, xtol=1e-15, rtol=1e-15)
    gstar = _g_uu(params, vstar)

    def common(theta):
        st = math.sin(theta)
        v = vstar * st
        # v - v* = -v* (1 - sin theta) = -v* cos^2 theta / (1 + sin theta)
        ct = math.cos(theta)
        dv = -vstar * ct * ct / (1.0 + st)
        diff = _g_uu_difference(params, v, dv) if dv != 0.0 else 0.0
        g = metric_closed_form(params, None, v)
        g_uu = float(g.g_uu)
        kinetic = ell * ell * diff / (g_uu * gstar)
        gamma = float(g.g_vv - g.g_uv**2 / g.g_uu)
        # dv/dtheta / v_dot, finite as theta -> pi/2
        if kinetic <= 0.0:
            ratio = _limit_ratio(params, vstar, ell, gstar, gamma)
        else:
            ratio = vstar * ct * math.sqrt(gamma / kinetic)
        return ratio, abs(g_uu)

    def lam_integrand(theta):
        return common(theta)[0]

    def u_integrand(theta):
        ratio, M2 = common(theta)
        return ell / M2 * ratio

    opts = dict(epsabs=1e-12, epsrel=1e-12, limit=200)
    lam, _ = quad(lam_integrand, 0.0, math.pi / 2, **opts)
    du, _ = quad(u_integrand, 0.0, math.pi / 2, **opts)
    return RadialPeriod(4 * lam, 4 * du, vstar)


def _limit_ratio(params, vstar, ell, gstar, gamma):
    """Value of v* cos(theta) / v_dot at theta = pi/2, where both vanish."""
    # 2(E - V) ~ ell^2 g_uu'(v*) v* cos^2(theta) / (2 g*^2) near the turning point
    slope = float(metric_v_derivative(params, vstar)[0])
    kin_coeff = ell * ell * (-slope) * vstar / (2.0 * gstar * gstar)
    if kin_coeff <= 0.0:
        return 0.0
    return vstar * math.sqrt(gamma / kin_coeff)


def _euclidean_origin_orbit(params: SurfaceParams, beta: float):
    s0 = initial_data(params, InitialSpec.angle(beta))
    cp = conserved(params, s0)
    return s0, cp.energy, cp.ell


def bounded_angle_range(params: SurfaceParams):
    """Open interval of launch angles at the origin giving radially bounded orbits."""
    if params.is_lorentzian:
        raise ValueError("angle-launched orbits are Euclidean")
    M0 = float(threading_split(params, 0.0, 0.0).M)
    Mpi = float(threading_split(params, 0.0, math.pi).M)
    return math.asin(Mpi / M0), math.pi / 2


def azimuth_per_oscillation(params: SurfaceParams, beta: float) -> float:
    _, energy, ell = _euclidean_origin_orbit(params, beta)
    return radial_period(params, energy, ell).u


def periodic_search(
    params: SurfaceParams, p: int, q: int, beta_range=None, samples: int = 200
) -> list[float]:
    """Launch angles at the origin whose orbits close after q radial oscillations
    and p azimuthal revolutions (q * Delta u(beta) = 2 pi p).

    Sign changes over a sampled grid in ``beta_range`` (default: the whole
    bounded range) are refined by Brent's method to 1e-10.
    """
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise ValueError("p and q must be coprime positive integers")
    lo, hi = beta_range if beta_range is not None else bounded_angle_range(params)
    # Delta u diverges logarithmically at the separatrix; cluster samples there.
    span = hi - lo
    eps = 1e-6 * span
    t = np.linspace(0.0, 1.0, samples)
    betas = lo + eps + (span - 2 * eps) * t**2

    def F(beta):
        return q * azimuth_per_oscillation(params, beta) - TWO_PI * p

    vals = [F(b) for b in betas]
    found = []
    for i in range(len(betas) - 1):
        if vals[i] == 0.0:
            found.append(float(betas[i]))
        elif vals[i] * vals[i + 1] < 0:
            found.append(brentq(F, betas[i], betas[i + 1], xtol=1e-10, rtol=1e-14))
    return found


def periodic_closure(params: SurfaceParams, beta: float, p: int, q: int, tol: float = 1e-12):
    """Integrate q radial oscillations from the origin and measure the closure miss.

    Returns (coordinate miss, horizontal-projection miss, trace).  The miss in
    coordinates compares (u - 2 pi p, v) with the start.
    """
    s0, energy, ell = _euclidean_origin_orbit(params, beta)
    period = radial_period(params, energy, ell)
    trace = integrate(params, s0, s0.lam + q * period.lam, tol=tol)
    du = trace.u[-1] - s0.u - TWO_PI * p
    dv = trace.v[-1] - s0.v
    coord_miss = math.hypot(du, dv)
    start = embed(params, s0.u, s0.v)[:2]
    end = embed(params, trace.u[-1], trace.v[-1])[:2]
    return coord_miss, float(np.linalg.norm(end - start)), trace


# ---------------------------------------------------------------------------
# null geodesic pair


@dataclass(frozen=True)
class NullPair:
    prograde: float
    retrograde: float
    prograde_trace: GeodesicTrace
    retrograde_trace: GeodesicTrace


def null_return(params: SurfaceParams, sign: int, tol: float = 1e-12) -> GeodesicTrace:
    """Null geodesic from the origin until v first reaches sign * 2 pi."""
    if not params.is_lorentzian:
        raise ValueError("null geodesics need the Lorentzian signature")
    s0 = initial_data(params, InitialSpec.null(sign))
    event = _v_target_event(sign * TWO_PI, direction=sign)
    trace = integrate(params, s0, 1e5, tol=tol, events=[event])
    if not trace.events:
        raise RuntimeError("null geodesic did not return to the outer equator")
    return trace


def null_pair_return(params: SurfaceParams, tol: float = 1e-12) -> NullPair:
    """Azimuth gained by each null geodesic before returning to the outer equator.

    The prograde member leaves along +d_v (co-rotating with the helix at the
    origin); the retrograde member along -d_v.
    """
    pro = null_return(params, +1, tol)
    retro = null_return(params, -1, tol)
    return NullPair(pro.u[-1] - pro.u[0], retro.u[-1] - retro.u[0], pro, retro)


def null_pair_quadrature(params: SurfaceParams):
    """Both return azimuths from du/dv = M_v +- sqrt(gamma_vv)/M along a null ray."""

    def slope(v, sign):
        th = threading_split(params, 0.0, v)
        return float(th.M_v + sign * np.sqrt(th.gamma_vv) / th.M)

    pro, _ = quad(lambda v: slope(v, +1), 0.0, TWO_PI, **_QUAD)
    # retrograde ray runs v: 0 -> -2 pi with du = M_v dv + sqrt(gamma)/M |dv|
    retro, _ = quad(lambda v: -slope(v, -1), -TWO_PI, 0.0, **_QUAD)
    return pro, retro
