"""Command-line front end.

    cavageo <mesh|grid|geodesic|potential|frames|validate> [options]

Options may also come from a JSON document given with ``--config``; flags
given on the command line override its values.  Exit status: 0 success,
1 usage error, 2 numerical failure, 3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import fields, replace

import numpy as np

from . import export, helix, orbits
from .errors import AdmissibilityError, ChartDomainError, IntegrationStall, InvalidSpecError
from .geodesic import InitialSpec, initial_data, integrate
from .metric import slicing_split
from .potential import potential_profile
from .surface import PRESETS, Signature, SurfaceParams, embed, preset
from .validate import ValidationAborted, ValidationConfig, run_suite

TWO_PI = 2 * math.pi
COMMANDS = ("mesh", "grid", "geodesic", "potential", "frames", "validate")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VALIDATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cavageo", description="Screw-symmetric tube surfaces and their geodesics.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--psi", help="tilt angle in radians or 'orthogonal'")
    p.add_argument("--signature", choices=[s.value for s in Signature])
    p.add_argument("--config", help="JSON document with option values")
    p.add_argument("--out", help="output path (default: standard output)")
    p.add_argument("--tol", type=float, help="integration tolerance")
    p.add_argument("--lambda-span", type=float, dest="lambda_span")
    p.add_argument("--grid", help="resolution NxM")
    spec = p.add_mutually_exclusive_group()
    spec.add_argument("--beta", type=float, help="Euclidean launch angle")
    spec.add_argument("--alpha", type=float, help="Lorentzian launch rapidity")
    spec.add_argument("--null", choices=["+", "-", "both"])
    spec.add_argument("--boost", choices=["vertical", "horizontal"])
    p.add_argument("--spacelike", action="store_true", default=None,
                   help="with --alpha: spacelike instead of timelike data")
    p.add_argument("--anchor", help="starting point u,v (default 0,0)")
    p.add_argument("--ell", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--u-max", type=float, dest="u_max", help="upper end of the u range")
    p.add_argument("--mode", choices=["coordinate", "orthogonal", "fermi"], help="grid family")
    p.add_argument("--samples", type=int, help="points per curve or table rows")
    return p


_OPTION_KEYS = (
    "preset", "a", "b", "c", "psi", "signature", "out", "tol", "lambda_span", "grid", "beta",
    "alpha", "null", "boost", "spacelike", "anchor", "ell", "seed", "u_max", "mode", "samples",
)


def resolve_options(args) -> dict:
    opts = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}") from exc
        if not isinstance(doc, dict):
            raise UsageError("config must be a JSON object")
        opts.update({k.replace("-", "_"): v for k, v in doc.items()})
    for key in _OPTION_KEYS:
        value = getattr(args, key)
        if value is not None:
            opts[key] = value
    return opts


def params_from_options(opts: dict, default: str | None = "euclid-canonical") -> SurfaceParams | None:
    explicit = any(opts.get(k) is not None for k in ("a", "b", "c", "psi", "signature"))
    name = opts.get("preset")
    if name is None and not explicit:
        return preset(default) if default else None
    base = preset(name) if name else None
    a = opts.get("a", base.a if base else None)
    b = opts.get("b", base.b if base else None)
    c = opts.get("c", base.c if base else None)
    if a is None or b is None or c is None:
        raise UsageError("need --a, --b and --c (or a --preset)")
    sig = Signature(opts.get("signature", base.signature.value if base else "euclid"))
    if sig is Signature.LORENTZIAN:
        return SurfaceParams.lorentzian(float(a), float(b), float(c))
    psi = opts.get("psi")
    if psi is None:
        if base is not None and not base.is_lorentzian and not explicit:
            return base
        psi = "orthogonal" if base is None or base.is_orthogonal else base.psi
    if isinstance(psi, str) and psi.strip().lower() == "orthogonal":
        return SurfaceParams.orthogonal(float(a), float(b), float(c))
    try:
        psi = float(psi)
    except ValueError as exc:
        raise UsageError(f"--psi must be a number or 'orthogonal', got {psi!r}") from exc
    return SurfaceParams.euclidean(float(a), float(b), float(c), psi)


def _grid(opts, default):
    text = opts.get("grid", default)
    try:
        n, m = (int(x) for x in str(text).lower().split("x"))
    except ValueError as exc:
        raise UsageError(f"--grid must look like NxM, got {text!r}") from exc
    if n < 2 or m < 2:
        raise UsageError("grid resolutions must be at least 2")
    return n, m


def _pair(text, what):
    try:
        x, y = (float(t) for t in str(text).split(","))
    except ValueError as exc:
        raise UsageError(f"{what} must look like X,Y, got {text!r}") from exc
    return x, y


def _emit(opts, text: str):
    out = opts.get("out")
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out!r}: {exc}") from exc


def _describe(p: SurfaceParams) -> str:
    return f"a={export.fmt(p.a)} b={export.fmt(p.b)} c={export.fmt(p.c)} psi={export.fmt(p.psi)} {p.signature.value}"


# ---------------------------------------------------------------------------
# commands


def cmd_mesh(opts) -> int:
    p = params_from_options(opts)
    nu, nv = _grid(opts, "64x64")
    u_max = float(opts.get("u_max", TWO_PI))
    u = np.linspace(0.0, u_max, nu + 1)
    v = np.linspace(0.0, TWO_PI, nv + 1)
    U, V = np.meshgrid(u, v, indexing="ij")
    verts = embed(p, U, V)
    _emit(opts, export.mesh_obj(verts, nu, nv, comment=f"mesh {_describe(p)} grid {nu}x{nv}"))
    return EXIT_OK


SPECIAL_CURVES = (
    ("outer_equator", 0.0),
    ("inner_equator", math.pi),
    ("northern_helix", math.pi / 2),
    ("southern_helix", -math.pi / 2),
)


def grid_curves(p: SurfaceParams, meridians: int, parallels: int, mode: str, u_max: float, samples: int):
    """Tagged (u, v) polylines for the requested coordinate grid."""
    if mode == "fermi" and not p.is_lorentzian:
        raise UsageError("fermi grid needs the Lorentzian signature")
    if mode in ("orthogonal", "fermi") and not p.is_orthogonal:
        raise UsageError("orthogonal grid needs the orthogonally tilted family")
    s = np.linspace(0.0, 1.0, samples)
    curves = []
    for i in range(meridians):
        u0 = u_max * i / meridians
        curves.append(("meridian", np.full_like(s, u0), TWO_PI * s))
    us = u_max * s
    if mode == "coordinate":
        for j in range(parallels):
            curves.append(("parallel", us, np.full_like(s, TWO_PI * j / parallels)))
    else:
        n_con = float(slicing_split(p, None, 0.0).N_con)
        tag = "time_line" if mode == "fermi" else "orthogonal"
        for j in range(parallels):
            level = TWO_PI * j / parallels
            curves.append((tag, us, level - n_con * us))
    for name, v0 in SPECIAL_CURVES:
        curves.append((f"special_{name}", us, np.full_like(s, v0)))
    return curves


def cmd_grid(opts) -> int:
    p = params_from_options(opts)
    meridians, parallels = _grid(opts, "8x12")
    mode = opts.get("mode", "coordinate")
    samples = int(opts.get("samples", 200))
    if samples < 2:
        raise UsageError("samples must be at least 2")
    curves = grid_curves(p, meridians, parallels, mode, float(opts.get("u_max", TWO_PI)), samples)
    polys = [(tag, embed(p, u, v)) for tag, u, v in curves]
    _emit(opts, export.polylines_obj(polys, comment=f"grid {mode} {_describe(p)}"))
    return EXIT_OK


_TRACE_HEADER = ("lambda", "u", "v", "u_dot", "v_dot", "ell", "E")


def _initial_spec(opts, p: SurfaceParams) -> InitialSpec:
    if opts.get("beta") is not None:
        return InitialSpec.angle(float(opts["beta"]))
    if opts.get("alpha") is not None:
        if opts.get("spacelike"):
            return InitialSpec.spacelike(float(opts["alpha"]))
        return InitialSpec.timelike(float(opts["alpha"]))
    if opts.get("null") is not None:
        return InitialSpec.null(+1 if opts["null"] == "+" else -1)
    if opts.get("boost") is not None:
        return InitialSpec.boost_aligned(opts["boost"])
    raise UsageError("geodesic needs one of --beta, --alpha, --null or --boost")


def cmd_geodesic(opts) -> int:
    p = params_from_options(opts)
    tol = float(opts.get("tol", 1e-10))
    if opts.get("null") == "both":
        pair = orbits.null_pair_return(p, tol=tol)
        rows = []
        for tag, tr in (("prograde", pair.prograde_trace), ("retrograde", pair.retrograde_trace)):
            rows.extend((tag,) + tuple(r) for r in tr.rows())
        _emit(opts, export.csv_text(("trace",) + _TRACE_HEADER, rows))
        sys.stderr.write(
            f"prograde return azimuth {export.fmt(pair.prograde)}\n"
            f"retrograde return azimuth {export.fmt(pair.retrograde)}\n"
        )
        return EXIT_OK
    spec = _initial_spec(opts, p)
    anchor = _pair(opts.get("anchor", "0,0"), "--anchor")
    s0 = initial_data(p, spec, anchor)
    span = float(opts.get("lambda_span", 20.0))
    trace = integrate(p, s0, s0.lam + span, tol=tol)
    _emit(opts, export.csv_text(_TRACE_HEADER, trace.rows()))
    if trace.flagged:
        sys.stderr.write(
            f"warning: conserved-quantity drift ell {export.fmt(trace.max_ell_drift)} "
            f"E {export.fmt(trace.max_energy_drift)}\n"
        )
    return EXIT_OK


def cmd_potential(opts) -> int:
    p = params_from_options(opts)
    ell = float(opts.get("ell", 1.0))
    samples = int(opts.get("samples", 361))
    if samples < 2:
        raise UsageError("samples must be at least 2")
    prof = potential_profile(p, ell, samples)
    rows = [("sample", v, V) for v, V in zip(prof.v, prof.V)]
    levels = dict(SPECIAL_CURVES)
    rows += [(name, levels[name], prof.levels[name]) for name, _ in SPECIAL_CURVES]
    _emit(opts, export.csv_text(("kind", "v", "V"), rows))
    return EXIT_OK


def cmd_frames(opts) -> int:
    p = params_from_options(opts)
    samples = int(opts.get("samples", 65))
    if samples < 2:
        raise UsageError("samples must be at least 2")
    axes = ("x", "y", "z") if not p.is_lorentzian else ("x", "y", "t")
    cols = [f"{name}_{ax}" for name in ("T", "N", "B") for ax in axes]
    rows = []
    if p.is_lorentzian:
        header = ("tau", "phi") + tuple(cols) + tuple(f"{n}_{ax}" for n in ("NF", "BF") for ax in axes)
        w = helix.proper_angular_velocity(p)
        for tau in np.linspace(0.0, helix.proper_period(p), samples):
            fr = helix.helix_frame(p, tau * w)
            ff = helix.fermi_frame(p, tau)
            rows.append((tau, tau * w, *fr.T, *fr.N, *fr.B, *ff.N, *ff.B))
    else:
        header = ("phi",) + tuple(cols)
        for phi in np.linspace(0.0, TWO_PI, samples):
            fr = helix.helix_frame(p, phi)
            rows.append((phi, *fr.T, *fr.N, *fr.B))
    _emit(opts, export.csv_text(header, rows))
    return EXIT_OK


def cmd_validate(opts) -> int:
    cfg = ValidationConfig()
    doc = opts.get("validation") or {}
    known = {f.name for f in fields(ValidationConfig)}
    unknown = set(doc) - known
    if unknown:
        raise UsageError(f"unknown validation settings: {', '.join(sorted(unknown))}")
    cfg = replace(cfg, **doc)
    if opts.get("seed") is not None:
        cfg = replace(cfg, seed=int(opts["seed"]))
    if opts.get("tol") is not None:
        cfg = replace(cfg, integration_tol=float(opts["tol"]))
    if opts.get("grid") is not None:
        cfg = replace(cfg, grid=_grid(opts, None)[0])
    p = params_from_options(opts, default=None)
    if p is None:
        sets = {name: preset(name) for name in ("euclid-canonical", "lorentz-canonical")}
    else:
        sets = {opts.get("preset") or "custom": p}
    try:
        report = run_suite(sets, cfg)
    except ValidationAborted as exc:
        _emit(opts, exc.report.to_text())
        sys.stderr.write(f"validation aborted: {exc}\n")
        return EXIT_NUMERIC
    _emit(opts, report.to_text())
    out = opts.get("out")
    if out is not None and out != "-":
        _emit({"out": out + ".json"}, report.to_json())
    return EXIT_OK if report.passed else EXIT_VALIDATION


HANDLERS = {
    "mesh": cmd_mesh,
    "grid": cmd_grid,
    "geodesic": cmd_geodesic,
    "potential": cmd_potential,
    "frames": cmd_frames,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = resolve_options(args)
        return HANDLERS[args.command](opts)
    # numeric errors first: ChartDomainError is also a ValueError
    except (IntegrationStall, ChartDomainError, ArithmeticError, RuntimeError) as exc:
        sys.stderr.write(f"cavageo: numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except (UsageError, AdmissibilityError, InvalidSpecError, ValueError) as exc:
        sys.stderr.write(f"cavageo: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
