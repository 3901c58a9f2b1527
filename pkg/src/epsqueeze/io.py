"""Result emission: CSV (canonical), JSON mirror, and minimal SVG plots.

Every emitted file starts with a `#`-prefixed metadata block embedding the
fully resolved parameter set in exact internal units (floats are written
with shortest round-trip repr), so a file is sufficient to reproduce
itself byte-identically.  No timestamps or environment-dependent values
are ever written.
"""

from __future__ import annotations

import hashlib
import json
import math

import numpy as np

from . import __version__
from .errors import ConfigError
from .params import (
    PARAM_KEYS,
    BareDetunings,
    DriveAmplitude,
    DrivePower,
    DriveTargetCoupling,
    SystemParams,
)
from .spectra import QuadratureSpectrum
from .steady import OperatingPoint
from .sweeps import COORD_PATHS, SweepResult


def _fmt_float(x: float) -> str:
    return repr(float(x))


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    x = float(value)
    if math.isnan(x):
        return ""
    return _fmt_float(x)


_DRIVE_NAMES = {DriveAmplitude: "amplitude", DrivePower: "power", DriveTargetCoupling: "target_gdb"}


def params_metadata(params: SystemParams) -> dict[str, str]:
    """Exact, ordered description of a parameter set for file headers."""
    drive = params.drive
    drive_name = _DRIVE_NAMES[type(drive)]
    drive_value = next(iter(vars(drive).values()))
    meta = {
        "params.omega_b_rad_s": _fmt_float(params.omega_b),
        "params.omega_d_rad_s": _fmt_float(params.omega_d),
        "params.omega_a_rad_s": _fmt_float(params.omega_a),
        "params.kappa_1_rad_s": _fmt_float(params.kappa_1),
        "params.kappa_2_rad_s": _fmt_float(params.kappa_2),
        "params.kappa_d_rad_s": _fmt_float(params.kappa_d),
        "params.kappa_b_rad_s": _fmt_float(params.kappa_b),
        "params.g_ad_rad_s": _fmt_float(params.g_ad),
        "params.g_ab_rad_s": _fmt_float(params.g_ab),
        "params.g_db_rad_s": _fmt_float(params.g_db),
        "params.temperature_K": _fmt_float(params.temperature),
        "params.detuning_mode": "bare" if isinstance(params.detuning, BareDetunings) else "effective",
        "params.delta_a_rad_s": _fmt_float(params.detuning.delta_a),
        "params.delta_d_rad_s": _fmt_float(params.detuning.delta_d),
        "params.drive_mode": drive_name,
        "params.drive_value_si": _fmt_float(drive_value),
    }
    return meta


def params_fingerprint(params: SystemParams) -> str:
    """Short stable hash of the resolved parameter set."""
    blob = "\n".join(f"{k}={v}" for k, v in params_metadata(params).items())
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def base_metadata(params: SystemParams, **extra: str) -> dict[str, str]:
    meta = {"tool": f"epsqueeze {__version__}"}
    meta.update({k: str(v) for k, v in extra.items()})
    meta.update(params_metadata(params))
    meta["params.fingerprint"] = params_fingerprint(params)
    return meta


def write_csv(path: str, meta: dict[str, str], columns: list[tuple[str, list]]) -> None:
    """Canonical CSV: `# key = value` header block, then plain columns."""
    names = [name for name, _ in columns]
    length = {len(values) for _, values in columns}
    if len(length) > 1:
        raise ConfigError(f"ragged columns: {dict((n, len(v)) for n, v in columns)}")
    rows = zip(*[values for _, values in columns]) if columns else []
    with open(path, "w", newline="\n") as handle:
        for key, value in meta.items():
            handle.write(f"# {key} = {value}\n")
        handle.write(",".join(names) + "\n")
        for row in rows:
            handle.write(",".join(_fmt_cell(cell) for cell in row) + "\n")


def write_json(path: str, meta: dict[str, str], columns: list[tuple[str, list]]) -> None:
    """JSON mirror of the CSV schema: {"meta": ..., "columns": ...}."""
    def clean(value):
        if value is None or isinstance(value, str):
            return value
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        x = float(value)
        return None if math.isnan(x) else x

    payload = {
        "meta": meta,
        "columns": {name: [clean(v) for v in values] for name, values in columns},
    }
    with open(path, "w", newline="\n") as handle:
        json.dump(payload, handle, indent=2, allow_nan=False)
        handle.write("\n")


def _db_or_inf(values: np.ndarray) -> np.ndarray:
    """dB column for file output; tolerates exact zeros (writes inf)."""
    values = np.asarray(values, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(values > 0.0, -10.0 * np.log10(np.maximum(values, 1e-300) / 0.5), np.inf)


def spectrum_columns(spectrum: QuadratureSpectrum, omega_b: float) -> list[tuple[str, list]]:
    return [
        ("omega_over_omega_b", list(spectrum.omegas / omega_b)),
        ("S", list(spectrum.values)),
        ("dB", list(_db_or_inf(spectrum.values))),
        ("phi", list(spectrum.phis)),
    ]


_QUANTITY_COLUMN = {
    "nsd": "S",
    "db": "dB",
    "peak_db": "peak_dB",
    "cooperativity": "C",
    "photon_number": "photon_number",
    "exciton_number": "exciton_number",
}


def _axis_column(axis_path: str, values: np.ndarray, base: SystemParams) -> tuple[str, np.ndarray]:
    if axis_path == "omega":
        return "omega_over_omega_b", values / base.omega_b
    if axis_path == "phi":
        return "phi_rad", values
    key = PARAM_KEYS[axis_path]
    return f"{axis_path}[{key.unit}]", np.asarray([key.to_display(base, v) for v in values])


def sweep_metadata(result: SweepResult) -> dict[str, str]:
    spec = result.spec
    extra = {
        "sweep.name": spec.name or "custom",
        "sweep.quantity": spec.quantity,
        "sweep.phi": str(spec.phi),
        "sweep.margin_rad_s": _fmt_float(spec.margin),
    }
    for i, axis in enumerate(spec.axes):
        extra[f"sweep.axis{i}"] = (
            f"{axis.path} n={axis.values.size} "
            f"min={_fmt_float(axis.values.min())} max={_fmt_float(axis.values.max())} "
            f"scale={axis.scale}"
        )
    if spec.quantity == "peak_db":
        grid = spec.omega_grid
        if grid is None:
            extra["sweep.omega_grid"] = "default"
        else:
            extra["sweep.omega_grid"] = (
                f"n={len(grid)} min={_fmt_float(np.min(grid))} max={_fmt_float(np.max(grid))}"
            )
    return base_metadata(spec.base, **extra)


def sweep_columns(result: SweepResult) -> list[tuple[str, list]]:
    """1D sweeps: one row per point; 2D sweeps: long form in row-major order."""
    spec = result.spec
    base = spec.base
    value_name = _QUANTITY_COLUMN[spec.quantity]
    axis_cols = [_axis_column(ax.path, ax.values, base) for ax in spec.axes]

    if len(spec.axes) == 1:
        columns = [(axis_cols[0][0], list(axis_cols[0][1]))]
        columns.append((value_name, list(result.values)))
    else:
        n0, n1 = result.values.shape
        x = np.repeat(axis_cols[0][1], n1)
        y = np.tile(axis_cols[1][1], n0)
        columns = [
            (axis_cols[0][0], list(x)),
            (axis_cols[1][0], list(y)),
            (value_name, list(result.values.ravel())),
        ]
    flat_stable = result.stable_mask.ravel()
    flat_above = result.above_vacuum_mask.ravel()
    columns.append(("stable", [bool(v) for v in flat_stable]))
    columns.append(("above_vacuum", [bool(v) for v in flat_above]))
    for name in spec.extras:
        columns.append((_QUANTITY_COLUMN[name], list(result.aux[name].ravel())))
    return columns


# ---------------------------------------------------------------------------
# SVG plots.  matplotlib is imported lazily so data-only runs never pay for
# it; the Agg backend and a fixed hash salt keep output reproducible.
# ---------------------------------------------------------------------------

def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "epsqueeze"
    import matplotlib.pyplot as plt

    return plt


_SVG_METADATA = {"Date": None}


def save_spectrum_plot(path: str, spectrum: QuadratureSpectrum, omega_b: float) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(spectrum.omegas / omega_b, _db_or_inf(spectrum.values), lw=1.2)
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel("omega / omega_b")
    ax.set_ylabel("squeezing (dB)")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    plt.close(fig)


def save_sweep_plot(path: str, result: SweepResult) -> None:
    """Line plot for 1D sweeps or few-curve 2D sweeps; heatmap otherwise.

    Heatmaps follow the masking conventions: unstable cells grey, cells
    above the vacuum level blank.
    """
    plt = _pyplot()
    spec = result.spec
    axis_cols = [_axis_column(ax.path, ax.values, spec.base) for ax in spec.axes]
    value_name = _QUANTITY_COLUMN[spec.quantity]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))

    if len(spec.axes) == 1:
        ax.plot(axis_cols[0][1], result.values, lw=1.2)
        ax.set_xlabel(axis_cols[0][0])
        ax.set_ylabel(value_name)
    elif result.values.shape[1] <= 6:
        for j in range(result.values.shape[1]):
            label = f"{axis_cols[1][0]} = {axis_cols[1][1][j]:g}"
            ax.plot(axis_cols[0][1], result.values[:, j], lw=1.2, label=label)
        ax.set_xlabel(axis_cols[0][0])
        ax.set_ylabel(value_name)
        ax.legend(fontsize=8)
    else:
        shown = np.ma.masked_where(~result.stable_mask | result.above_vacuum_mask,
                                   result.values)
        mesh = ax.pcolormesh(axis_cols[0][1], axis_cols[1][1], shown.T, shading="nearest")
        grey = np.ma.masked_where(result.stable_mask, np.zeros_like(result.values))
        ax.pcolormesh(axis_cols[0][1], axis_cols[1][1], grey.T, shading="nearest",
                      cmap="gray", vmin=-1.0, vmax=1.0)
        fig.colorbar(mesh, ax=ax, label=value_name)
        ax.set_xlabel(axis_cols[0][0])
        ax.set_ylabel(axis_cols[1][0])
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    plt.close(fig)


def operating_point_dict(op: OperatingPoint) -> dict[str, float]:
    """Flat serializable view of an operating point (complex split re/im)."""
    return {
        "a_ss_re": op.a_ss.real, "a_ss_im": op.a_ss.imag,
        "d_ss_re": op.d_ss.real, "d_ss_im": op.d_ss.imag,
        "b_ss_re": op.b_ss.real, "b_ss_im": op.b_ss.imag,
        "photon_number": abs(op.a_ss) ** 2,
        "exciton_number": abs(op.d_ss) ** 2,
        "G_ab_re": op.G_ab.real, "G_ab_im": op.G_ab.imag,
        "G_db_re": op.G_db.real, "G_db_im": op.G_db.imag,
        "G_ab_abs": abs(op.G_ab), "G_db_abs": abs(op.G_db),
        "delta_a_eff_rad_s": op.delta_a_eff,
        "delta_d_eff_rad_s": op.delta_d_eff,
        "Omega_rad_s": op.Omega,
    }
