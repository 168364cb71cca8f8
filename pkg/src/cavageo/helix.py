"""Frames along the central helix and Fermi coordinates about it.

Euclidean frames are right-handed orthonormal.  In the Lorentzian case the
tangent is the unit 4-velocity (T.T = -1 under diag(1, 1, -1)), the normal
is the unit acceleration direction and the binormal is the raised
Minkowski cross product of T and N, which makes the Fermi rotation
``Omega = c / (c^2 - a^2)`` positive for a right-handed helix.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ChartDomainError
from .surface import SurfaceParams, ambient_inner, helix_point

# Fermi chart accepted out to this fraction of the curvature radius.
CHART_FRACTION = 0.99


@dataclass(frozen=True)
class FrameTriad:
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: float
    Omega: float

    def matrix(self):
        return np.stack([self.T, self.N, self.B])


def _require_lorentzian(params: SurfaceParams):
    if not params.is_lorentzian:
        raise ValueError("operation is defined for the Lorentzian helix only")


def proper_angular_velocity(params: SurfaceParams) -> float:
    """d(phi)/d(tau) = 1/sqrt(c^2 - a^2)."""
    _require_lorentzian(params)
    return 1.0 / params.helix_length_scale


def coordinate_period(params: SurfaceParams) -> float:
    """Inertial time for one revolution, 2 pi c."""
    return 2 * math.pi * params.c


def proper_period(params: SurfaceParams) -> float:
    """Proper time for one revolution, 2 pi sqrt(c^2 - a^2)."""
    _require_lorentzian(params)
    return 2 * math.pi * params.helix_length_scale


def helix_frame(params: SurfaceParams, phi: float) -> FrameTriad:
    """Frenet-Serret triad of the central helix at azimuth ``phi``."""
    a, c = params.a, params.c
    s = params.helix_length_scale
    cp, sp = math.cos(phi), math.sin(phi)
    rho = np.array([cp, sp, 0.0])
    phi_hat = np.array([-sp, cp, 0.0])
    z_hat = np.array([0.0, 0.0, 1.0])
    N = -rho
    if params.is_lorentzian:
        T = (a * phi_hat + c * z_hat) / s
        B = -(c * phi_hat + a * z_hat) / s
        return FrameTriad(T, N, B, kappa=a / (s * s), Omega=c / (s * s))
    T = (a * phi_hat + c * z_hat) / s
    B = (-c * phi_hat + a * z_hat) / s
    return FrameTriad(T, N, B, kappa=a / (s * s), Omega=c / (s * s))


def thomas_angle(params: SurfaceParams) -> float:
    """Retrograde lag of gyroscope axes per proper orbital period, 2 pi (gamma - 1).

    For small helix speeds this tends to pi v^2.
    """
    _require_lorentzian(params)
    return 2 * math.pi * (params.gamma - 1.0)


def fermi_frame(params: SurfaceParams, tau: float) -> FrameTriad:
    """Fermi-Walker transported triad at proper time ``tau``.

    The spatial pair is the Frenet pair (N, B) rotated by ``-Omega tau``
    within the local rest space; it coincides with it at ``tau = 0``.
    """
    _require_lorentzian(params)
    frame = helix_frame(params, tau * proper_angular_velocity(params))
    angle = frame.Omega * tau
    ca, sa = math.cos(angle), math.sin(angle)
    NF = ca * frame.N - sa * frame.B
    BF = sa * frame.N + ca * frame.B
    return FrameTriad(frame.T, NF, BF, frame.kappa, frame.Omega)


def fermi_to_inertial(params: SurfaceParams, X: float, Y: float, tau: float, strict=True):
    """Inertial coordinates ``(x, y, t)`` of the Fermi point ``(X, Y, tau)``.

    Points farther than ``CHART_FRACTION / kappa`` from the helix raise
    ``ChartDomainError`` (or only warn when ``strict`` is false).
    """
    frame = fermi_frame(params, tau)
    limit = CHART_FRACTION / frame.kappa
    radius = math.hypot(X, Y)
    if radius >= limit:
        msg = f"Fermi chart radius {radius:.6g} exceeds {limit:.6g}"
        if strict:
            raise ChartDomainError(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    phi = tau * proper_angular_velocity(params)
    return helix_point(params, phi) + X * frame.N + Y * frame.B


def frame_residual(params: SurfaceParams, frame: FrameTriad) -> float:
    """Largest deviation of the triad from signature-orthonormality."""
    vecs = frame.matrix()
    gram = ambient_inner(params, vecs[:, None, :], vecs[None, :, :])
    target = np.eye(3)
    if params.is_lorentzian:
        target[0, 0] = -1.0
    return float(np.max(np.abs(gram - target)))


def fermi_walker_rhs(params: SurfaceParams):
    """Right-hand side for transporting a vector along the helix by Fermi-Walker.

    dX/dtau = <X, A> U - <X, U> A with U, A the 4-velocity and 4-acceleration
    (the Minkowski sign of U.U = -1 folded in).
    """
    _require_lorentzian(params)
    w = proper_angular_velocity(params)
    a, c = params.a, params.c

    def rhs(tau, X):
        phi = w * tau
        cp, sp = math.cos(phi), math.sin(phi)
        U = np.array([-a * w * sp, a * w * cp, c * w])
        A = np.array([-a * w * w * cp, -a * w * w * sp, 0.0])
        xa = X[0] * A[0] + X[1] * A[1] - X[2] * A[2]
        xu = X[0] * U[0] + X[1] * U[1] - X[2] * U[2]
        return xa * U - xu * A

    return rhs
