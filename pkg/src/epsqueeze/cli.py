"""Command-line interface.

Commands: steady-state | spectrum | optimize-phase | sweep | figure | presets.
All user-facing values are cyclic units (a "20" for couplings.g_ad means
g_ad/2pi = 20 GHz); angles accept multiples of pi as e.g. "0.75pi".

Exit codes: 0 success, 2 configuration error, 3 physics error (instability,
singular or non-convergent steady state), 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import io as emit
from .dynamics import build_system, stability
from .errors import ConfigError, InternalConsistencyError, PhysicsError, UnstableSystemError
from .params import PARAM_KEYS, SystemParams, set_param
from .presets import paper_preset, preset_description, preset_names
from .spectra import (
    default_omega_grid,
    optimal_phase,
    quadrature_spectrum,
    squeezing_db,
    summarize,
)
from .steady import cooperativity, operating_point
from .sweeps import (
    FIGURE_FILES,
    QUANTITIES,
    SweepAxis,
    SweepSpec,
    figure_description,
    figure_names,
    figure_preset,
    run_sweep,
)
from .params import MHZ


def parse_angle(text: str):
    """Parse an angle: 'optimal', '<x>pi', or plain radians."""
    cleaned = text.strip().lower().replace(" ", "")
    if cleaned == "optimal":
        return "optimal"
    if cleaned.endswith("pi"):
        factor = cleaned[:-2].rstrip("*")
        if factor in ("", "+"):
            return math.pi
        if factor == "-":
            return -math.pi
        try:
            return float(factor) * math.pi
        except ValueError:
            raise ConfigError(f"cannot parse angle {text!r}") from None
    try:
        return float(cleaned)
    except ValueError:
        raise ConfigError(
            f"cannot parse angle {text!r}; use radians, a multiple of pi "
            "like 0.75pi, or 'optimal'"
        ) from None


def parse_grid(text: str, omega_b: float) -> np.ndarray:
    """Parse 'lo:hi:n' (in units of omega_b) into a frequency grid."""
    pieces = text.split(":")
    if len(pieces) != 3:
        raise ConfigError(f"grid must be lo:hi:n (in omega_b units), got {text!r}")
    try:
        lo, hi = float(pieces[0]), float(pieces[1])
        num = int(pieces[2])
    except ValueError:
        raise ConfigError(f"cannot parse grid {text!r}") from None
    if num < 1:
        raise ConfigError(f"grid needs at least one point, got {num}")
    return np.linspace(lo * omega_b, hi * omega_b, num)


def apply_sets(params: SystemParams, assignments: list[str]) -> SystemParams:
    for assignment in assignments:
        key, sep, raw = assignment.partition("=")
        if not sep:
            raise ConfigError(f"--set expects key=value, got {assignment!r}")
        key = key.strip()
        if key == "phi":
            raise ConfigError("phi is not a system parameter; use --phi")
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(f"cannot parse value in {assignment!r}") from None
        params = set_param(params, key, value)
    return params


def parse_axis(text: str, base: SystemParams) -> SweepAxis:
    """Parse an --axis flag: 'path=lo:hi:n[:log]' or 'path=v1,v2,...'.

    Values are in the key's display unit; 'omega' is in omega_b multiples
    and 'phi' accepts pi-suffixed values.
    """
    path, sep, raw = text.partition("=")
    if not sep:
        raise ConfigError(f"--axis expects path=range, got {text!r}")
    path = path.strip()

    def convert(value: float) -> float:
        if path == "omega":
            return value * base.omega_b
        if path == "phi":
            return value
        if path in PARAM_KEYS:
            return PARAM_KEYS[path].to_internal(base, value)
        raise ConfigError(
            f"unknown axis path {path!r}; valid: omega, phi, "
            + ", ".join(sorted(PARAM_KEYS))
        )

    def parse_number(piece: str) -> float:
        if path == "phi":
            angle = parse_angle(piece)
            if angle == "optimal":
                raise ConfigError("a phi axis needs numeric values")
            return angle
        try:
            return float(piece)
        except ValueError:
            raise ConfigError(f"cannot parse {piece!r} in axis {text!r}") from None

    if "," in raw:
        values = [convert(parse_number(piece)) for piece in raw.split(",")]
        return SweepAxis.explicit(path, values)
    pieces = raw.split(":")
    if len(pieces) not in (3, 4):
        raise ConfigError(
            f"axis range must be lo:hi:n or lo:hi:n:log or v1,v2,..., got {text!r}"
        )
    lo, hi = parse_number(pieces[0]), parse_number(pieces[1])
    try:
        num = int(pieces[2])
    except ValueError:
        raise ConfigError(f"axis point count must be an integer, got {pieces[2]!r}") from None
    if len(pieces) == 4:
        if pieces[3] != "log":
            raise ConfigError(f"axis scale must be 'log', got {pieces[3]!r}")
        return SweepAxis.log(path, convert(lo), convert(hi), num)
    return SweepAxis.linear(path, convert(lo), convert(hi), num)


def _resolve_params(args) -> SystemParams:
    params = paper_preset(args.preset)
    return apply_sets(params, args.set or [])


def _emit_table(args, meta, columns, default_stream=True) -> None:
    fmt = args.format
    if args.out is None:
        if not default_stream:
            raise ConfigError("this command needs --out")
        if fmt == "json":
            emit.write_json("/dev/stdout", meta, columns)
        else:
            for key, value in meta.items():
                sys.stdout.write(f"# {key} = {value}\n")
            sys.stdout.write(",".join(name for name, _ in columns) + "\n")
            for row in zip(*[vals for _, vals in columns]):
                sys.stdout.write(",".join(emit._fmt_cell(c) for c in row) + "\n")
        return
    if fmt == "json":
        emit.write_json(args.out, meta, columns)
    else:
        emit.write_csv(args.out, meta, columns)


def cmd_presets(args) -> int:
    print("parameter presets:")
    for name in preset_names():
        print(f"  {name:14s} {preset_description(name)}")
    print("figure presets (for `figure` and `sweep`):")
    for name in figure_names():
        print(f"  {name:14s} {figure_description(name)}")
    return 0


def cmd_steady_state(args) -> int:
    params = _resolve_params(args)
    op = operating_point(params)
    report = emit.operating_point_dict(op)
    report["C"] = cooperativity(op, params)
    report["Omega_over_2pi_THz"] = op.Omega / (2.0 * math.pi * 1e12)
    from .params import drive_power_from_amplitude

    omega_0 = params.omega_d - params.detuning.delta_d
    if params.kappa_1 > 0.0:
        report["power_mW"] = 1e3 * drive_power_from_amplitude(op.Omega, params.kappa_1, omega_0)
    meta = emit.base_metadata(params, command="steady-state", preset=args.preset)
    columns = [(key, [value]) for key, value in report.items()]
    if args.out is None and args.format == "csv":
        # single-point report reads better as key = value text
        for key, value in report.items():
            print(f"{key} = {value:.10g}")
        return 0
    _emit_table(args, meta, columns)
    return 0


def cmd_spectrum(args) -> int:
    params = _resolve_params(args)
    phi = parse_angle(args.phi)
    op = operating_point(params)
    system = build_system(op, params)
    report = stability(system, args.margin * MHZ)
    if not report.stable:
        raise UnstableSystemError(report.max_real_eig)
    omegas = (
        parse_grid(args.grid, params.omega_b)
        if args.grid
        else default_omega_grid(params.omega_b)
    )
    spectrum = quadrature_spectrum(system, omegas, phi,
                                   params_hash=emit.params_fingerprint(params))
    meta = emit.base_metadata(
        params, command="spectrum", preset=args.preset, phi=str(args.phi),
        grid=f"n={omegas.size} min={float(omegas.min())!r} max={float(omegas.max())!r}",
    )
    columns = emit.spectrum_columns(spectrum, params.omega_b)
    _emit_table(args, meta, columns)
    if args.plot:
        if args.out is None:
            raise ConfigError("--plot needs --out to name the SVG file")
        svg = _svg_path(args.out)
        emit.save_spectrum_plot(svg, spectrum, params.omega_b)
        print(f"wrote {svg}", file=sys.stderr)
    return 0


def cmd_optimize_phase(args) -> int:
    params = _resolve_params(args)
    op = operating_point(params)
    system = build_system(op, params)
    report = stability(system, args.margin * MHZ)
    if not report.stable:
        raise UnstableSystemError(report.max_real_eig)
    if args.omega is not None:
        omega = args.omega * params.omega_b
        best = optimal_phase(system, omega)
        print(f"omega/omega_b = {args.omega:.6g}")
        print(f"phi_star = {best.phi_star / math.pi:.6f} pi ({best.phi_star:.6f} rad)")
        print(f"S_min = {best.S_min:.10g}")
        print(f"squeezing = {squeezing_db(best.S_min):.6g} dB")
        return 0
    omegas = (
        parse_grid(args.grid, params.omega_b)
        if args.grid
        else default_omega_grid(params.omega_b)
    )
    spectrum = quadrature_spectrum(system, omegas, "optimal",
                                   params_hash=emit.params_fingerprint(params))
    best = summarize(spectrum)
    print(
        f"best: {best.max_db:.6g} dB at omega/omega_b = "
        f"{best.omega_at_max / params.omega_b:.6g}, phi = {best.phi_at_max / math.pi:.6f} pi"
    )
    if args.out is not None:
        meta = emit.base_metadata(params, command="optimize-phase", preset=args.preset)
        _emit_table(args, meta, emit.spectrum_columns(spectrum, params.omega_b))
    return 0


def _svg_path(out: str) -> str:
    stem = out[:-4] if out.endswith((".csv", ".svg")) else out
    if stem.endswith(".json"):
        stem = stem[:-5]
    return stem + ".svg"


def _run_and_emit_sweep(args, spec: SweepSpec, out: str | None) -> None:
    result = run_sweep(spec)
    meta = emit.sweep_metadata(result)
    meta["command"] = "sweep"
    columns = emit.sweep_columns(result)
    if out is None:
        for key, value in meta.items():
            sys.stdout.write(f"# {key} = {value}\n")
        sys.stdout.write(",".join(name for name, _ in columns) + "\n")
        for row in zip(*[vals for _, vals in columns]):
            sys.stdout.write(",".join(emit._fmt_cell(c) for c in row) + "\n")
    elif args.format == "json":
        emit.write_json(out, meta, columns)
    else:
        emit.write_csv(out, meta, columns)
    if args.plot:
        if out is None:
            raise ConfigError("--plot needs --out to name the SVG file")
        svg = _svg_path(out)
        emit.save_sweep_plot(svg, result)
        print(f"wrote {svg}", file=sys.stderr)


def cmd_sweep(args) -> int:
    params = _resolve_params(args)
    if not args.axis:
        raise ConfigError("sweep needs at least one --axis")
    if len(args.axis) > 2:
        raise ConfigError(f"a sweep takes at most 2 axes, got {len(args.axis)}")
    axes = tuple(parse_axis(text, params) for text in args.axis)
    phi = parse_angle(args.phi)
    omega_grid = parse_grid(args.grid, params.omega_b) if args.grid else None
    spec = SweepSpec(
        base=params,
        axes=axes,
        quantity=args.quantity,
        phi=phi,
        omega_grid=omega_grid,
        margin=args.margin * MHZ,
        name="custom",
    )
    _run_and_emit_sweep(args, spec, args.out)
    return 0


def cmd_figure(args) -> int:
    name = args.name
    if name not in FIGURE_FILES:
        raise ConfigError(f"unknown figure {name!r}; available: {', '.join(FIGURE_FILES)}")
    out_base = args.out if args.out is not None else name
    extension = ".json" if args.format == "json" else ".csv"
    for i, panel in enumerate(FIGURE_FILES[name]):
        spec = figure_preset(panel)
        if args.set:
            spec = SweepSpec(
                base=apply_sets(spec.base, args.set),
                axes=spec.axes,
                quantity=spec.quantity,
                phi=spec.phi,
                omega_grid=spec.omega_grid,
                margin=spec.margin,
                extras=spec.extras,
                name=spec.name,
            )
        if args.margin:
            spec = SweepSpec(
                base=spec.base, axes=spec.axes, quantity=spec.quantity, phi=spec.phi,
                omega_grid=spec.omega_grid, margin=args.margin * MHZ,
                extras=spec.extras, name=spec.name,
            )
        suffix = "" if i == 0 else "-inset"
        out = f"{out_base}{suffix}{extension}"
        _run_and_emit_sweep(args, spec, out)
        print(f"wrote {out}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epsqueeze",
        description="Squeezing spectra of a driven cavity-exciton-phonon system",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", default="fig2a", help="parameter preset (see `presets`)")
    common.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override a parameter (repeatable); units per key, "
                             "see README")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--plot", action="store_true", help="also write an SVG plot")
    common.add_argument("--margin", type=float, default=0.0,
                        help="stability margin in MHz (cyclic); points with "
                             "max Re(eig) >= -margin count as unstable")

    sub.add_parser("presets", help="list bundled presets")

    sub.add_parser("steady-state", parents=[common],
                   help="classical operating point, couplings, cooperativity")

    spectrum = sub.add_parser("spectrum", parents=[common],
                              help="output quadrature NSD over a frequency grid")
    spectrum.add_argument("--phi", default="optimal",
                          help="homodyne angle: radians, '0.75pi', or 'optimal'")
    spectrum.add_argument("--grid", default=None,
                          help="frequency grid lo:hi:n in omega_b units "
                               "(default -2:2:2001)")

    optimize = sub.add_parser("optimize-phase", parents=[common],
                              help="analytic minimum of the NSD over the homodyne angle")
    optimize.add_argument("--omega", type=float, default=None,
                          help="single frequency in omega_b units; omit to scan the grid")
    optimize.add_argument("--grid", default=None, help="grid lo:hi:n in omega_b units")

    sweep = sub.add_parser("sweep", parents=[common], help="generic 1D/2D parameter sweep")
    sweep.add_argument("--axis", action="append", metavar="PATH=RANGE",
                       help="axis as path=lo:hi:n[:log] or path=v1,v2,... "
                            "(repeatable, max 2)")
    sweep.add_argument("--quantity", choices=QUANTITIES, default="db")
    sweep.add_argument("--phi", default="optimal")
    sweep.add_argument("--grid", default=None,
                       help="omega grid for peak_db, lo:hi:n in omega_b units")

    figure = sub.add_parser("figure", parents=[common],
                            help="run a bundled figure sweep and write its files")
    figure.add_argument("name", help="figure name, e.g. fig2a (see `presets`)")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "presets": cmd_presets,
        "steady-state": cmd_steady_state,
        "spectrum": cmd_spectrum,
        "optimize-phase": cmd_optimize_phase,
        "sweep": cmd_sweep,
        "figure": cmd_figure,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except PhysicsError as error:
        print(f"physics error: {error}", file=sys.stderr)
        return 3
    except InternalConsistencyError as error:
        print(f"internal consistency error: {error}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
