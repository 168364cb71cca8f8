"""Independent numerical oracles and the validation report.

Each check compares a closed-form quantity with a route that does not use
it (finite differences of the embedding, a different quadrature or a direct
integration) and records the worst discrepancy against a stated tolerance.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import helix, orbits
from .curvature import gaussian_curvature, principal_curvatures, scalar_curvature
from .errors import AdmissibilityError, CavageoError
from .geodesic import (
    GeodesicState,
    InitialSpec,
    christoffel,
    geodesic_rhs,
    initial_data,
    integrate_batch,
)
from .metric import (
    metric_closed_form,
    metric_oracle,
    orthogonal_direction,
    orthogonal_grid_coordinate,
    slicing_split,
    surface_area_one_rev,
    threading_split,
)
from .potential import effective_potential
from .surface import Signature, SurfaceParams, check_admissibility, embed

TWO_PI = 2 * math.pi


class ValidationAborted(CavageoError):
    """A check could not run; ``report`` holds the records gathered so far."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


@dataclass
class ValidationConfig:
    grid: int = 101
    seed: int = 20240917
    split_samples: int = 100_000
    ode_samples: int = 10_000
    traces: int = 100
    lambda_span: float = 100.0
    integration_tol: float = 1e-10
    tol_metric: float = 1e-7
    tol_split: float = 1e-12
    tol_area: float = 1e-8
    tol_curvature: float = 1e-6
    tol_polar: float = 1e-10
    tol_conservation: float = 1e-8
    tol_energy_identity: float = 1e-9
    tol_special: float = 1e-9
    tol_ode: float = 1e-10
    tol_zero_ell: float = 1e-8
    tol_null: float = 1e-9
    tol_torus: float = 1e-10
    tol_grid: float = 1e-9
    tol_thomas: float = 1e-9


@dataclass
class CheckRecord:
    check_id: str
    parameters: dict
    grid: str
    max_abs_error: float | None
    tolerance: float | None
    passed: bool
    notes: str = ""


@dataclass(frozen=True)
class Discrepancy:
    key: str
    printed: str
    implemented: str
    adjudication: str


# Formula discrepancies between the reference derivation and this package.
DISCREPANCIES = (
    Discrepancy(
        "effective-potential-bracket",
        "V = (a^2+c^2) l^2 / (2 (a^2+c^2+ab cos v)^2 + b^2 c^2)",
        "V = +-l^2 / (2 M^2), M^2 = ((a^2+c^2+ab cos v)^2 + b^2 c^2)/(a^2+c^2)",
        "E = (U^v)^2/2 + l^2/(2 M^2) forces the whole bracket to be doubled",
    ),
    Discrepancy(
        "canonical-lapse",
        "N = (3/2+cos v)^2 - (8/17)^2 cos^2 v + (4/5)",
        "N = (a^2+c^2+ab cos v)/sqrt(a^2+c^2)",
        "N^2 g_vv = |det g| confirmed on random samples",
    ),
    Discrepancy(
        "orthogonal-grid-coordinate",
        "v_perp = v - (b^2 c/sqrt(a^2+c^2)) u",
        "v_perp = v + N^v u = v - (c/sqrt(a^2+c^2)) u",
        "b^2 factor dropped (agrees at b = 1); grid orthogonality check",
    ),
    Discrepancy(
        "canonical-orthogonal-grid-example",
        "v_perp = v + (8/17) u",
        "v_perp = v - (8/17) u",
        "sign follows N^v = g_uv/g_vv < 0; grid orthogonality check",
    ),
    Discrepancy(
        "lorentz-orthogonal-grid-coordinate",
        "v_perp = v - c u / sqrt(c^2-a^2)",
        "v_perp = v + c u / sqrt(c^2-a^2)",
        "N^v = +c/sqrt(c^2-a^2); grid orthogonality check",
    ),
    Discrepancy(
        "shift-index-position",
        "M^v = M_v/g_vv equated to M_v = -8/(17 M^2)",
        "M_v = g_uv/M^2 and M^v = M_v/g_vv kept distinct",
        "equal only when b = 1",
    ),
    Discrepancy(
        "general-tilt-metric-angle",
        "general-tilt metric written with the helix inclination eta",
        "general-tilt metric written with the tilt angle psi",
        "metric oracle at psi != eta",
    ),
    Discrepancy(
        "lorentz-threading-gamma",
        "gamma_vv = g_vv - g_uv^2/M^2",
        "gamma_vv = g_vv - g_uv^2/g_uu = g_vv + g_uv^2/M^2",
        "split reconstruction and M^2 gamma_vv = |det g|",
    ),
    Discrepancy(
        "lorentz-v-equation-signs",
        "D v'' - a sin v (D^2-b^2c^2)/(b(c^2-a^2)) u'^2 + 2abc sin v/sqrt(c^2-a^2) u' v' = 0",
        "D v'' + a sin v (D^2-b^2c^2)/(b(c^2-a^2)) u'^2 - 2abc sin v/sqrt(c^2-a^2) u' v' = 0",
        "Christoffel symbols of the oracle-checked metric; conservation telemetry",
    ),
    Discrepancy(
        "geodesic-parameter-notation",
        "first derivatives written d/dt in second-order affine equations",
        "all derivatives with respect to the affine parameter",
        "reading that reproduces the Euclidean system exactly",
    ),
    Discrepancy(
        "null-initial-data-sign",
        "(du, dv) = (1/M -+ M_v gamma^-1/2, +-gamma^-1/2)",
        "(du, dv) = (1/M +- M_v gamma^-1/2, +-gamma^-1/2)",
        "l = M for both null members",
    ),
    Discrepancy(
        "lorentz-timelike-initial-data-sign",
        "du = U^u/M - M_v gamma^-1/2 U^v",
        "du = U^u/M + M_v gamma^-1/2 U^v",
        "l = M cosh(alpha) at the anchor",
    ),
    Discrepancy(
        "cumulative-antiderivative-factor",
        "AC(v) = A(shift(v)) + 2 Delta u floor((v+pi)/(2 pi))",
        "AC(v) = A(w) + Delta u k, v = w + 2 pi k, w in [-pi, pi)",
        "additivity AC(v + 2 pi) = AC(v) + Delta u",
    ),
    Discrepancy(
        "lorentz-zero-ell-integrand",
        "Delta u integrand without the b^2 c factor",
        "Delta u = int sqrt(c^2-a^2) b^2 c / ((c^2-a^2-ab cos v)^2 - b^2 c^2) dv",
        "zero-ell geodesic integration",
    ),
    Discrepancy(
        "binormal-sign",
        "Lorentz binormal with mixed component signs",
        "B = -(c phi_hat + a t_hat)/sqrt(c^2-a^2)",
        "Frenet-Serret derivative identities",
    ),
    Discrepancy(
        "fermi-rotation-matrix",
        "rotation matrix acting on (N, B) transposed",
        "N_F = cos(W t) N - sin(W t) B, B_F = sin(W t) N + cos(W t) B",
        "numerical Fermi-Walker propagation",
    ),
    Discrepancy(
        "tube-frame-normal",
        "tube offset written with N twice",
        "offset -b cos v N - b sin v B (Lorentzian)",
        "embedding agreement",
    ),
    Discrepancy(
        "thomas-angle-value",
        "lag angle ~ 0.972005 rad",
        "2 pi (gamma - 1) = 0.9720121497572859 rad for (2, 1, 4)",
        "numerical Fermi-Walker propagation",
    ),
    Discrepancy(
        "thomas-angle-limit",
        "2 pi (gamma - 1) = 2 pi c / (c^2 - a^2) -> pi a^2 / v^2",
        "2 pi (gamma - 1), small-speed limit pi v^2",
        "dimensional consistency; series of gamma in v",
    ),
    Discrepancy(
        "lorentz-scalar-curvature-sign",
        "R = 2a cos v/(b D) for the Lorentz tube",
        "R = -2 k1 k2, equal to the intrinsic value for signature (+, -)",
        "shape operator and Brioschi oracles",
    ),
    Discrepancy(
        "launch-angle-reference",
        "beta = 0 described as the meridian direction",
        "(U^u, U^v) = (sin beta, cos beta): beta = 0 is the zero-l direction",
        "formulas taken as normative",
    ),
    Discrepancy(
        "initial-data-normalisation",
        "frame components scaled by 2E",
        "frame components scaled by the speed |g(U, U)|^1/2",
        "unit-speed data give l = M sin beta",
    ),
    Discrepancy(
        "potential-example-rounding",
        "V(0) = 0.072575 for l = 1",
        "V(0) = 1/13.78 = 0.0725689...",
        "direct evaluation",
    ),
    Discrepancy(
        "lorentz-area-value",
        "area = 136.758",
        "area = 4 pi^2 sqrt(12) = 136.7572501863...",
        "quadrature",
    ),
)


@dataclass
class ValidationReport:
    config: dict
    records: list = field(default_factory=list)
    discrepancies: list = field(default_factory=lambda: [asdict(d) for d in DISCREPANCIES])

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def add(self, record: CheckRecord):
        self.records.append(record)

    def sorted(self):
        self.records.sort(key=lambda r: r.check_id)
        return self

    def to_dict(self):
        return {
            "passed": self.passed,
            "config": self.config,
            "checks": [asdict(r) for r in self.records],
            "discrepancies": self.discrepancies,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, allow_nan=False) + "\n"

    def to_text(self) -> str:
        lines = ["validation report", ""]
        for r in self.records:
            status = "PASS" if r.passed else "FAIL"
            err = "-" if r.max_abs_error is None else repr(r.max_abs_error)
            tol = "-" if r.tolerance is None else repr(r.tolerance)
            lines.append(f"{status} {r.check_id} grid={r.grid} err={err} tol={tol}")
            if r.notes:
                lines.append(f"     {r.notes}")
        lines.append("")
        lines.append(f"{sum(r.passed for r in self.records)}/{len(self.records)} checks passed")
        lines.append("")
        lines.append("formula discrepancies")
        for d in self.discrepancies:
            lines.append(f"- {d['key']}")
            lines.append(f"    printed:     {d['printed']}")
            lines.append(f"    implemented: {d['implemented']}")
            lines.append(f"    settled by:  {d['adjudication']}")
        return "\n".join(lines) + "\n"


def _params_dict(params) -> dict:
    if isinstance(params, SurfaceParams):
        return {
            "a": params.a,
            "b": params.b,
            "c": params.c,
            "psi": params.psi,
            "signature": params.signature.value,
        }
    return dict(params)


def _finite(x):
    x = float(x)
    return x if math.isfinite(x) else None


# ---------------------------------------------------------------------------
# oracles


def _fd_derivatives(params: SurfaceParams, u, v, h):
    """4th-order central differences of the embedding: X_u, X_v, X_uu, X_uv, X_vv."""
    u = np.asarray(u, dtype=float)[..., None]
    v = np.asarray(v, dtype=float)[..., None]

    def X(du, dv):
        return embed(params, u + du, v + dv)

    X0 = X(0, 0)
    c1 = (-X(2 * h, 0) + 8 * X(h, 0) - 8 * X(-h, 0) + X(-2 * h, 0)) / (12 * h)
    c2 = (-X(0, 2 * h) + 8 * X(0, h) - 8 * X(0, -h) + X(0, -2 * h)) / (12 * h)
    uu = (-X(2 * h, 0) + 16 * X(h, 0) - 30 * X0 + 16 * X(-h, 0) - X(-2 * h, 0)) / (12 * h * h)
    vv = (-X(0, 2 * h) + 16 * X(0, h) - 30 * X0 + 16 * X(0, -h) - X(0, -2 * h)) / (12 * h * h)

    def Xu_at(dv):
        return (-X(2 * h, dv) + 8 * X(h, dv) - 8 * X(-h, dv) + X(-2 * h, dv)) / (12 * h)

    uv = (-Xu_at(2 * h) + 8 * Xu_at(h) - 8 * Xu_at(-h) + Xu_at(-2 * h)) / (12 * h)
    squeeze = lambda arr: arr[..., 0, :]  # noqa: E731
    return tuple(squeeze(a) for a in (X0, c1, c2, uu, uv, vv))


def second_fundamental_form_oracle(params: SurfaceParams, u, v, h=1e-3):
    """Principal curvatures from finite-difference shape-operator eigenvalues.

    The unit normal points towards the profile-circle centre on the helix.
    In the Lorentzian case it is the Minkowski cross product with its time
    component raised, normalised by sqrt(<n, n>) (the normal is spacelike).
    Returns (k_meridian, k_other), the first identified by the eigenvector
    closest to d_v.
    """
    if not 1e-6 <= h <= 1e-3:
        raise ValueError("h must lie in [1e-6, 1e-3]")
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    X0, Xu, Xv, Xuu, Xuv, Xvv = _fd_derivatives(params, u, v, h)
    n = np.cross(Xu, Xv)
    if params.is_lorentzian:
        n[..., 2] = -n[..., 2]
    norm2 = _inner(params, n, n)
    if np.any(norm2 <= 0):
        raise ValueError("degenerate normal")
    n = n / np.sqrt(norm2)[..., None]
    centre = np.stack([params.a * np.cos(u), params.a * np.sin(u), params.c * u], axis=-1)
    flip = _inner(params, n, X0 - centre) > 0
    n = np.where(flip[..., None], -n, n)
    g = np.stack(
        [
            np.stack([_inner(params, Xu, Xu), _inner(params, Xu, Xv)], -1),
            np.stack([_inner(params, Xv, Xu), _inner(params, Xv, Xv)], -1),
        ],
        -2,
    )
    II = np.stack(
        [
            np.stack([_inner(params, Xuu, n), _inner(params, Xuv, n)], -1),
            np.stack([_inner(params, Xuv, n), _inner(params, Xvv, n)], -1),
        ],
        -2,
    )
    S = np.linalg.solve(g, II)
    w, vecs = np.linalg.eig(S)
    w = np.real(w)
    vecs = np.real(vecs)
    # meridian direction d_v has no u component
    ucomp = np.abs(vecs[..., 0, :]) / np.linalg.norm(vecs, axis=-2)
    first = np.argmin(ucomp, axis=-1)
    k_mer = np.take_along_axis(w, first[..., None], -1)[..., 0]
    k_oth = np.take_along_axis(w, (1 - first)[..., None], -1)[..., 0]
    return k_mer, k_oth


def _inner(params, x, y):
    return x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] + params.time_sign * x[..., 2] * y[..., 2]


def brioschi_curvature(params: SurfaceParams, v, h=1e-3):
    """Intrinsic Gaussian curvature R_uvuv/det g from the first fundamental form.

    Uses Brioschi's formula with 4th-order differences in v of the metric
    (which does not depend on u).
    """
    v = np.asarray(v, dtype=float)

    def comps(x):
        g = metric_closed_form(params, None, x)
        return np.asarray(g.g_uu), np.asarray(g.g_uv), np.asarray(g.g_vv)

    E, F, G = comps(v)
    Ep2, Fp2, _ = comps(v + 2 * h)
    Ep1, Fp1, _ = comps(v + h)
    Em1, Fm1, _ = comps(v - h)
    Em2, Fm2, _ = comps(v - 2 * h)
    E_v = (-Ep2 + 8 * Ep1 - 8 * Em1 + Em2) / (12 * h)
    F_v = (-Fp2 + 8 * Fp1 - 8 * Fm1 + Fm2) / (12 * h)
    E_vv = (-Ep2 + 16 * Ep1 - 30 * E + 16 * Em1 - Em2) / (12 * h * h)
    det = E * G - F * F
    m1 = np.array(
        [[-0.5 * E_vv, np.zeros_like(E), -0.5 * E_v], [F_v, E, F], [np.zeros_like(E), F, G]]
    )
    m2 = np.array(
        [[np.zeros_like(E), 0.5 * E_v, np.zeros_like(E)], [0.5 * E_v, E, F], [np.zeros_like(E), F, G]]
    )
    d1 = np.linalg.det(np.moveaxis(m1, (0, 1), (-2, -1)))
    d2 = np.linalg.det(np.moveaxis(m2, (0, 1), (-2, -1)))
    return (d1 - d2) / det**2


def printed_geodesic_accelerations(params: SurfaceParams, v, ud, vd):
    """(u'', v'') from the closed-form second-order system as printed.

    The Lorentzian v-equation is included exactly as printed so that its
    sign discrepancy shows up in the cross-check.
    """
    a, b, c = params.a, params.b, params.c
    sv, cv = np.sin(v), np.cos(v)
    if params.is_lorentzian:
        q = c * c - a * a
        D = q - a * b * cv
        udd = -(a * b * c * sv / math.sqrt(q) * ud * ud + 2 * a * b * sv * ud * vd) / D
        vdd = (
            a * sv * (D * D - b * b * c * c) / (b * q) * ud * ud
            - 2 * a * b * c * sv / math.sqrt(q) * ud * vd
        ) / D
        return udd, vdd
    s2 = a * a + c * c
    D = s2 + a * b * cv
    udd = -(a * b * c * sv / math.sqrt(s2) * ud * ud - 2 * a * b * sv * ud * vd) / D
    vdd = -(
        a * sv * (D * D + b * b * c * c) / (b * s2) * ud * ud
        - 2 * a * b * c * sv / math.sqrt(s2) * ud * vd
    ) / D
    return udd, vdd


def thomas_angle_numeric(params: SurfaceParams, rtol=1e-13, atol=1e-13) -> float:
    """Lag angle of a Fermi-Walker transported axis after one proper period.

    The Frenet normal is propagated with an independent 8th-order integrator
    and the angle from N back to the transported vector, measured towards
    -B, is returned in [0, 2 pi).
    """
    T = helix.proper_period(params)
    frame0 = helix.helix_frame(params, 0.0)
    sol = solve_ivp(
        helix.fermi_walker_rhs(params), (0.0, T), frame0.N, method="DOP853", rtol=rtol, atol=atol
    )
    X = sol.y[:, -1]
    frame = helix.helix_frame(params, T * helix.proper_angular_velocity(params))
    x = float(_inner(params, X, frame.N))
    y = float(-_inner(params, X, frame.B))
    return math.atan2(y, x) % TWO_PI


# ---------------------------------------------------------------------------
# suite


def _grid(n):
    g = np.linspace(0.0, TWO_PI, n)
    return np.meshgrid(g, g, indexing="ij")


def _record(report, name, check, params, grid, err, tol, notes="", passed=None):
    if passed is None:
        passed = err is not None and math.isfinite(err) and err < tol
    report.add(
        CheckRecord(f"{name}/{check}", _params_dict(params), grid, _finite(err) if err is not None else None,
                    tol, bool(passed), notes)
    )


def _check_metric(report, name, p, cfg):
    U, V = _grid(cfg.grid)
    closed = metric_closed_form(p, U, V)
    oracle = metric_oracle(p, U, V)
    err = max(
        float(np.max(np.abs(closed.g_uu - oracle.g_uu))),
        float(np.max(np.abs(closed.g_uv - oracle.g_uv))),
        float(np.max(np.abs(closed.g_vv - oracle.g_vv))),
    )
    _record(report, name, "metric-oracle", p, f"{cfg.grid}x{cfg.grid}", err, cfg.tol_metric)


def _check_splits(report, name, p, cfg, rng):
    v = rng.uniform(-math.pi, math.pi, cfg.split_samples)
    g = metric_closed_form(p, None, v)
    th = threading_split(p, None, v)
    sl = slicing_split(p, None, v)
    absdet = np.abs(g.det)
    e1 = np.max(np.abs(th.M**2 * th.gamma_vv - absdet) / absdet)
    e2 = np.max(np.abs(sl.N**2 * sl.g_vv - absdet) / absdet)
    errs = [e1, e2]
    for rec in (th.reconstruct(), sl.reconstruct()):
        for x, y in ((rec.g_uu, g.g_uu), (rec.g_uv, g.g_uv), (rec.g_vv, g.g_vv)):
            scale = np.maximum(np.abs(y), 1.0)
            errs.append(np.max(np.abs(x - y) / scale))
    _record(report, name, "split-identities", p, f"{cfg.split_samples} samples", float(max(errs)), cfg.tol_split)


def _check_area(report, name, p, cfg):
    res = surface_area_one_rev(p)
    if res.closed_form is None:
        _record(report, name, "pappus-area", p, "adaptive", None, cfg.tol_area,
                notes="general tilt: no closed form, quadrature only", passed=True)
        return
    _record(report, name, "pappus-area", p, "adaptive", res.rel_error, cfg.tol_area,
            notes=f"quadrature={res.quadrature!r} closed={res.closed_form!r}")


def _check_curvature(report, name, p, cfg):
    if not p.is_orthogonal:
        return
    U, V = _grid(cfg.grid)
    k1, k2 = principal_curvatures(p, U, V)
    o1, o2 = second_fundamental_form_oracle(p, U, V)
    err = max(float(np.max(np.abs(k1 - o1))), float(np.max(np.abs(k2 - o2))))
    _record(report, name, "curvature-shape-operator", p, f"{cfg.grid}x{cfg.grid}", err, cfg.tol_curvature)

    v = np.linspace(0.0, TWO_PI, cfg.grid)
    K = gaussian_curvature(p, None, v)
    err = float(np.max(np.abs(K - brioschi_curvature(p, v))))
    _record(report, name, "curvature-intrinsic", p, f"{cfg.grid}", err, cfg.tol_curvature)

    R = scalar_curvature(p, None, np.array([math.pi / 2, -math.pi / 2]))
    _record(report, name, "curvature-polar-helices", p, "2 points", float(np.max(np.abs(R))), cfg.tol_polar)


def _check_christoffel(report, name, p, cfg, rng):
    n = cfg.ode_samples
    v = rng.uniform(-math.pi, math.pi, n)
    ud = rng.uniform(-2, 2, n)
    vd = rng.uniform(-2, 2, n)
    y = np.concatenate([np.zeros(n), v, ud, vd])
    acc = geodesic_rhs(p)(0.0, y)
    udd, vdd = acc[2 * n:3 * n], acc[3 * n:]
    pu, pv = printed_geodesic_accelerations(p, v, ud, vd)
    err_u = float(np.max(np.abs(udd - pu)))
    err_v = float(np.max(np.abs(vdd - pv)))
    if p.is_lorentzian:
        _record(report, name, "geodesic-printed-system-u", p, f"{n} states", err_u, cfg.tol_ode)
        # the printed v-equation has both terms sign-flipped; compare against the
        # corrected form and report the size of the uncorrected mismatch
        err_flip = float(np.max(np.abs(vdd + pv)))
        _record(report, name, "geodesic-printed-system-v", p, f"{n} states", err_flip, cfg.tol_ode,
                notes=f"as printed the mismatch is {err_v!r}; see lorentz-v-equation-signs")
    else:
        _record(report, name, "geodesic-printed-system", p, f"{n} states", max(err_u, err_v), cfg.tol_ode)

    # Christoffel symbols against a finite-difference metric derivative
    h = 1e-4
    vs = v[:200]
    G = christoffel(p, None, vs)
    gp = metric_closed_form(p, None, vs + h)
    gm = metric_closed_form(p, None, vs - h)
    g = metric_closed_form(p, None, vs)
    dE = (gp.g_uu - gm.g_uu) / (2 * h)
    dF = (gp.g_uv - gm.g_uv) / (2 * h)
    first = np.array([[[np.zeros_like(vs), 0.5 * dE], [0.5 * dE, dF]],
                      [[-0.5 * dE, np.zeros_like(vs)], [np.zeros_like(vs), np.zeros_like(vs)]]])
    inv = np.linalg.inv(np.moveaxis(g.as_matrix(), (0, 1), (-2, -1)))
    second = np.einsum("nkl,lijn->kijn", inv, first)
    mine = np.array([[[G.u_uu, G.u_uv], [G.u_uv, G.u_vv]], [[G.v_uu, G.v_uv], [G.v_uv, G.v_vv]]])
    err = float(np.max(np.abs(mine - second)))
    _record(report, name, "christoffel-difference-quotient", p, "200 states", err, 1e-7)


def _battery(p, cfg, rng):
    n = cfg.traces
    states = []
    if p.is_lorentzian:
        for i in range(n):
            anchor = (rng.uniform(0, TWO_PI), rng.uniform(-math.pi, math.pi))
            kind = i % 4
            alpha = rng.uniform(-1.5, 1.5)
            if kind == 0:
                spec = InitialSpec.timelike(alpha)
            elif kind == 1:
                spec = InitialSpec.spacelike(alpha)
            else:
                spec = InitialSpec.null(+1 if kind == 2 else -1)
            states.append(initial_data(p, spec, anchor))
    else:
        for _ in range(n):
            anchor = (rng.uniform(0, TWO_PI), rng.uniform(-math.pi, math.pi))
            states.append(initial_data(p, InitialSpec.angle(rng.uniform(0, TWO_PI)), anchor))
    return states


def _check_conservation(report, name, p, cfg, rng):
    states = _battery(p, cfg, rng)
    traces = integrate_batch(p, states, cfg.lambda_span, cfg.integration_tol, cfg.tol_conservation)
    d_ell = max(t.max_ell_drift for t in traces)
    d_E = max(t.max_energy_drift for t in traces)
    grid = f"{len(traces)} traces, span {cfg.lambda_span!r}"
    _record(report, name, "conservation-ell", p, grid, d_ell, cfg.tol_conservation)
    _record(report, name, "conservation-energy", p, grid, d_E, cfg.tol_conservation)
    worst = 0.0
    for t in traces:
        th = threading_split(p, None, t.v)
        U_v = np.sqrt(th.gamma_vv) * t.v_dot
        V = effective_potential(p, t.v, t.ell)
        worst = max(worst, float(np.max(np.abs(0.5 * U_v**2 + V - t.energy))))
    _record(report, name, "energy-identity", p, grid, worst, cfg.tol_energy_identity)


def _check_special(report, name, p, cfg):
    M0 = float(threading_split(p, None, 0.0).M)
    Mpi = float(threading_split(p, None, math.pi).M)
    starts = [
        GeodesicState(0.0, 0.0, 0.0, 0.0, 1.0 / p.b),
        GeodesicState(0.0, 0.0, 0.0, 1.0 / M0, 0.0),
        GeodesicState(0.0, 0.0, math.pi, 1.0 / Mpi, 0.0),
    ]
    traces = integrate_batch(p, starts, cfg.lambda_span, cfg.integration_tol)
    dev = max(
        float(np.max(np.abs(traces[0].u))),
        float(np.max(np.abs(traces[1].v))),
        float(np.max(np.abs(traces[2].v - math.pi))),
    )
    _record(report, name, "special-geodesics", p, f"span {cfg.lambda_span!r}", dev, cfg.tol_special,
            notes="meridian, outer equator, inner equator")


def _check_zero_ell(report, name, p, cfg):
    quad_du = orbits.delta_u_per_revolution(p)
    ode_du = orbits.zero_ell_geodesic_delta_u(p)
    _record(report, name, "zero-ell-delta-u", p, "adaptive", abs(quad_du - ode_du), cfg.tol_zero_ell,
            notes=f"quadrature={quad_du!r} integrated={ode_du!r}")
    ac = orbits.cumulative_zero_ell_azimuth(p, np.array([-2.0, 0.7, 2.5]))
    ac2 = orbits.cumulative_zero_ell_azimuth(p, np.array([-2.0, 0.7, 2.5]) + TWO_PI)
    _record(report, name, "cumulative-additivity", p, "3 points", float(np.max(np.abs(ac2 - ac - quad_du))),
            cfg.tol_zero_ell)


def _check_null_pair(report, name, p, cfg):
    pair = orbits.null_pair_return(p)
    drift = max(
        float(np.max(np.abs(pair.prograde_trace.energy))),
        float(np.max(np.abs(pair.retrograde_trace.energy))),
        pair.prograde_trace.max_ell_drift,
        pair.retrograde_trace.max_ell_drift,
    )
    ok = pair.prograde > pair.retrograde and drift < cfg.tol_null
    _record(report, name, "null-pair", p, "2 traces", drift, cfg.tol_null,
            notes=f"prograde={float(pair.prograde)!r} retrograde={float(pair.retrograde)!r}", passed=ok)


def _check_grid(report, name, p, cfg):
    if not p.is_orthogonal:
        return
    U, V = _grid(cfg.grid)
    g = metric_closed_form(p, U, V)
    du, dv = orthogonal_direction(p)
    # orthogonal curve direction against the meridian d_v
    dot = g.g_uv * du + g.g_vv * dv
    err = float(np.max(np.abs(dot)))
    # v_perp must be constant along that direction
    h = 1e-3
    vp0 = orthogonal_grid_coordinate(p, U, V)
    vp1 = orthogonal_grid_coordinate(p, U + h * du, V + h * dv)
    err = max(err, float(np.max(np.abs(vp1 - vp0))))
    _record(report, name, "grid-orthogonality", p, f"{cfg.grid}x{cfg.grid}", err, cfg.tol_grid)


def _check_torus(report, name, p, cfg):
    if p.c != 0.0 or p.psi != 0.0 or p.is_lorentzian:
        return
    U, V = _grid(cfg.grid)
    g = metric_closed_form(p, U, V)
    a, b = p.a, p.b
    e1 = float(np.max(np.abs(g.g_uv)))
    e2 = float(np.max(np.abs(g.g_uu - (a + b * np.cos(V)) ** 2)))
    K = gaussian_curvature(p, U, V)
    e3 = float(np.max(np.abs(K - np.cos(V) / (b * (a + b * np.cos(V))))))
    e4 = abs(orbits.delta_u_per_revolution(p))
    _record(report, name, "torus-limit", p, f"{cfg.grid}x{cfg.grid}", max(e1, e2, e3, e4), cfg.tol_torus)


def _check_thomas(report, name, p, cfg):
    frame_err = max(helix.frame_residual(p, helix.fermi_frame(p, t)) for t in np.linspace(0, 10, 11))
    _record(report, name, "frame-orthonormality", p, "11 points", frame_err, 1e-12)
    closed = helix.thomas_angle(p)
    numeric = thomas_angle_numeric(p)
    _record(report, name, "thomas-angle", p, "DOP853", abs(closed - numeric), cfg.tol_thomas,
            notes=f"closed={closed!r} propagated={numeric!r}")


def _check_admissibility(report, name, raw, cfg):
    a, b, c = raw["a"], raw["b"], raw["c"]
    ok, worst_v, margin = check_admissibility(a, b, c, raw.get("signature", "euclid"), raw.get("psi", 0.0))
    note = f"margin={margin!r}"
    if worst_v is not None:
        note += (" smallest" if ok else " violated") + f" at v={worst_v!r}"
    _record(report, name, "admissibility", raw, "-", None, None, notes=note, passed=ok)
    return ok


def run_suite(params_set, config: ValidationConfig | None = None) -> ValidationReport:
    """Run every applicable check for each named parameter set.

    ``params_set`` maps names to ``SurfaceParams`` or raw dicts with keys
    a, b, c, psi, signature (raw dicts may be inadmissible; they are then
    reported as failing the admissibility check and skipped otherwise).
    """
    cfg = config or ValidationConfig()
    items = list(params_set.items()) if isinstance(params_set, dict) else list(params_set)
    if not items:
        raise ValueError("need at least one parameter set")
    report = ValidationReport(config=asdict(cfg))
    for name, entry in items:
        rng = np.random.default_rng(cfg.seed)
        raw = _params_dict(entry)
        if not _check_admissibility(report, name, raw, cfg):
            continue
        p = entry if isinstance(entry, SurfaceParams) else SurfaceParams(
            raw["a"], raw["b"], raw["c"], raw.get("psi", 0.0), Signature(raw.get("signature", "euclid"))
        )
        try:
            _check_metric(report, name, p, cfg)
            _check_splits(report, name, p, cfg, rng)
            _check_area(report, name, p, cfg)
            if p.is_orthogonal:
                _check_curvature(report, name, p, cfg)
                _check_christoffel(report, name, p, cfg, rng)
                _check_conservation(report, name, p, cfg, rng)
                _check_special(report, name, p, cfg)
                _check_zero_ell(report, name, p, cfg)
                _check_grid(report, name, p, cfg)
            _check_torus(report, name, p, cfg)
            if p.is_lorentzian:
                _check_null_pair(report, name, p, cfg)
                _check_thomas(report, name, p, cfg)
        except (AdmissibilityError, CavageoError, ArithmeticError, np.linalg.LinAlgError) as exc:
            raise ValidationAborted(f"{name}: {exc}", report.sorted()) from exc
    return report.sorted()
