"""Effective potential for the meridian motion and orbit classification."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .metric import threading_split
from .surface import SurfaceParams

_ROOT_SAMPLES = 2049


class OrbitClass(str, enum.Enum):
    RADIALLY_BOUNDED = "bounded"
    WRAPPING = "wrapping"


def effective_potential(params: SurfaceParams, v, ell):
    """V(v) = +ell^2/(2 M^2) (Euclidean) or -ell^2/(2 M^2) (Lorentzian).

    The meridian motion then obeys E = (U^v)^2/2 + V(v), with U^v the
    unit-frame component along the meridian-normal of the threads.
    """
    M = threading_split(params, 0.0, v).M
    V = 0.5 * ell * ell / (M * M)
    return -V if params.is_lorentzian else V


@dataclass(frozen=True)
class PotentialProfile:
    ell: float
    v: np.ndarray
    V: np.ndarray
    levels: dict

    def turning_points(self, params, energy):
        return turning_points(params, energy, self.ell)


SPECIAL_LEVELS = {
    "outer_equator": 0.0,
    "northern_helix": math.pi / 2,
    "southern_helix": -math.pi / 2,
    "inner_equator": math.pi,
}


def potential_profile(params: SurfaceParams, ell: float, samples: int = 361) -> PotentialProfile:
    """V sampled on [-pi, pi] plus its values on the equators and polar helices."""
    if samples < 2:
        raise ValueError("need at least two samples")
    v = np.linspace(-math.pi, math.pi, samples)
    V = effective_potential(params, v, ell)
    levels = {k: float(effective_potential(params, vv, ell)) for k, vv in SPECIAL_LEVELS.items()}
    return PotentialProfile(float(ell), v, np.asarray(V), levels)


def turning_points(params: SurfaceParams, energy: float, ell: float) -> list[float]:
    """Meridian angles in (-pi, pi] where E = V(v).

    Roots are bracketed on a grid over [0, pi], polished with Brent's method
    and mirrored using the evenness of V.  An empty list means the meridian
    motion is unbounded (the orbit wraps around the tube).  Raises
    ``ValueError`` if ``energy`` lies below the potential everywhere.
    """
    if ell == 0:
        if energy > 0:
            return []
        raise ValueError("zero screw-angular momentum needs E > 0")

    def f(v):
        return float(effective_potential(params, v, ell)) - energy

    grid = np.linspace(0.0, math.pi, _ROOT_SAMPLES)
    vals = np.asarray(effective_potential(params, grid, ell)) - energy
    if np.all(vals > 0):
        raise ValueError(f"energy {energy!r} lies below the effective potential minimum")
    half = []
    for i in range(len(grid)):
        if vals[i] == 0.0:
            half.append(float(grid[i]))
        elif i + 1 < len(grid) and vals[i] * vals[i + 1] < 0:
            half.append(brentq(f, grid[i], grid[i + 1], xtol=1e-14, rtol=1e-15))
    roots = set()
    for r in half:
        roots.add(r)
        if 0.0 < r < math.pi:
            roots.add(-r)
    return sorted(roots)


def classify(params: SurfaceParams, energy: float, ell: float) -> OrbitClass:
    if turning_points(params, energy, ell):
        return OrbitClass.RADIALLY_BOUNDED
    return OrbitClass.WRAPPING
