"""Parameter sweeps with stability masking, and bundled sweep presets.

A sweep walks one or two axes.  An axis is either a system parameter
(dotted key from params.PARAM_KEYS, values in internal units) or one of the
evaluation coordinates "omega" and "phi".  At every parameter point the
steady state is re-solved honoring the drive specification (fixed
amplitude, fixed power, or target coupling), the linear system is rebuilt,
and the point is stability-checked; unstable points are masked, never
extrapolated.  Results are deterministic: grid points are evaluated in
index order with no shared mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import spectra
from .dynamics import build_system, stability
from .errors import ConfigError, PhysicsError
from .params import GHZ, MHZ, PARAM_KEYS, DriveAmplitude, SystemParams, set_param_internal
from .presets import baseline_drive_amplitude, paper_preset
from .steady import cooperativity, operating_point

COORD_PATHS = ("omega", "phi")

# "nsd"/"db" need an omega axis; "peak_db" maximizes dB over the omega_grid;
# the rest are scalars of the operating point.
QUANTITIES = ("nsd", "db", "peak_db", "cooperativity", "photon_number", "exciton_number")
SCALAR_QUANTITIES = ("cooperativity", "photon_number", "exciton_number")


@dataclass(frozen=True)
class SweepAxis:
    """One sweep dimension: a dotted parameter key or omega/phi, plus values.

    Values are in internal units (rad/s, K, rad).  They must be finite and
    strictly monotonic (either direction).
    """

    path: str
    values: np.ndarray
    scale: str = "linear"

    def __post_init__(self):
        if self.path not in PARAM_KEYS and self.path not in COORD_PATHS:
            valid = ", ".join(list(COORD_PATHS) + sorted(PARAM_KEYS))
            raise ConfigError(f"unknown axis path {self.path!r}; valid paths: {valid}")
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size < 1:
            raise ConfigError("axis needs a 1-d array with at least one value")
        if not np.all(np.isfinite(values)):
            raise ConfigError(f"axis {self.path!r} has non-finite values")
        if values.size > 1:
            steps = np.diff(values)
            if not (np.all(steps > 0.0) or np.all(steps < 0.0)):
                raise ConfigError(f"axis {self.path!r} values must be strictly monotonic")

    @classmethod
    def linear(cls, path: str, start: float, stop: float, num: int) -> "SweepAxis":
        if num < 1:
            raise ConfigError(f"axis {path!r} needs at least one point, got {num}")
        return cls(path, np.linspace(start, stop, num))

    @classmethod
    def log(cls, path: str, start: float, stop: float, num: int) -> "SweepAxis":
        if num < 1:
            raise ConfigError(f"axis {path!r} needs at least one point, got {num}")
        if start <= 0.0 or stop <= 0.0:
            raise ConfigError("log axis endpoints must be positive")
        return cls(path, np.geomspace(start, stop, num), scale="log")

    @classmethod
    def explicit(cls, path: str, values) -> "SweepAxis":
        return cls(path, np.asarray(values, dtype=float))


@dataclass(frozen=True)
class SweepSpec:
    base: SystemParams
    axes: tuple[SweepAxis, ...]
    quantity: str
    phi: float | str = "optimal"
    omega_grid: np.ndarray | None = None  # used by peak_db; default grid if None
    margin: float = 0.0                   # stability margin, rad/s
    extras: tuple[str, ...] = ()          # additional scalar columns
    name: str = ""


@dataclass
class SweepResult:
    spec: SweepSpec
    coords: tuple[np.ndarray, ...]        # one array per axis, internal units
    values: np.ndarray                    # grid-shaped; NaN where masked
    stable_mask: np.ndarray               # bool per point
    above_vacuum_mask: np.ndarray         # bool per point (S > 0.5); False for scalar quantities
    max_real_eig: np.ndarray              # rad/s per point; NaN where no operating point
    aux: dict[str, np.ndarray]


def _check_spec(spec: SweepSpec) -> None:
    axes = tuple(spec.axes)
    if not 1 <= len(axes) <= 2:
        raise ConfigError(f"a sweep takes 1 or 2 axes, got {len(axes)}")
    paths = [ax.path for ax in axes]
    if len(set(paths)) != len(paths):
        raise ConfigError(f"duplicate axis path in {paths}")
    if spec.quantity not in QUANTITIES:
        raise ConfigError(
            f"unknown quantity {spec.quantity!r}; valid: {', '.join(QUANTITIES)}"
        )
    has_omega = "omega" in paths
    has_phi = "phi" in paths
    if spec.quantity in ("nsd", "db") and not has_omega:
        raise ConfigError(f"quantity {spec.quantity!r} needs an 'omega' axis")
    if spec.quantity not in ("nsd", "db") and (has_omega or has_phi):
        raise ConfigError(
            f"quantity {spec.quantity!r} does not take omega/phi axes"
        )
    if isinstance(spec.phi, str) and spec.phi != "optimal":
        raise ConfigError(f"phi must be a number or 'optimal', got {spec.phi!r}")
    for name in spec.extras:
        if name not in SCALAR_QUANTITIES:
            raise ConfigError(
                f"extra quantity {name!r} not in {', '.join(SCALAR_QUANTITIES)}"
            )


def _scalar_quantity(name: str, op, params: SystemParams) -> float:
    if name == "cooperativity":
        return cooperativity(op, params)
    if name == "photon_number":
        return abs(op.a_ss) ** 2
    if name == "exciton_number":
        return abs(op.d_ss) ** 2
    raise ConfigError(f"unknown scalar quantity {name!r}")


def run_sweep(spec: SweepSpec) -> SweepResult:
    _check_spec(spec)
    axes = tuple(spec.axes)
    shape = tuple(ax.values.size for ax in axes)
    values = np.full(shape, np.nan)
    stable_mask = np.zeros(shape, dtype=bool)
    above_vacuum = np.zeros(shape, dtype=bool)
    max_real_eig = np.full(shape, np.nan)
    aux = {name: np.full(shape, np.nan) for name in spec.extras}

    param_positions = [i for i, ax in enumerate(axes) if ax.path not in COORD_PATHS]
    omega_pos = next((i for i, ax in enumerate(axes) if ax.path == "omega"), None)
    phi_pos = next((i for i, ax in enumerate(axes) if ax.path == "phi"), None)
    param_shape = tuple(axes[i].values.size for i in param_positions)

    for pidx in (np.ndindex(param_shape) if param_shape else [()]):
        point = spec.base
        selector = [slice(None)] * len(axes)
        for k, axis_pos in enumerate(param_positions):
            axis = axes[axis_pos]
            point = set_param_internal(point, axis.path, float(axis.values[pidx[k]]))
            selector[axis_pos] = pidx[k]
        selector = tuple(selector)

        try:
            op = operating_point(point)
        except PhysicsError:
            continue  # no classical operating point here; leave masked
        system = build_system(op, point)
        report = stability(system, spec.margin)
        max_real_eig[selector] = report.max_real_eig
        if not report.stable:
            continue
        stable_mask[selector] = True
        for name in spec.extras:
            aux[name][selector] = _scalar_quantity(name, op, point)

        if spec.quantity in SCALAR_QUANTITIES:
            values[selector] = _scalar_quantity(spec.quantity, op, point)
            continue

        if spec.quantity == "peak_db":
            grid = spec.omega_grid
            if grid is None:
                grid = spectra.default_omega_grid(spec.base.omega_b)
            P, Q, R = spectra.phase_parts(system, grid)
            if spec.phi == "optimal":
                _, s = spectra.optimum_from_parts(P, Q)
            else:
                s = spectra.nsd_from_parts(P, Q, R, float(spec.phi))
            values[selector] = spectra.squeezing_db(float(s.min()))
            continue

        # "nsd" or "db" resolved over the omega axis (and phi axis if present)
        omegas = axes[omega_pos].values
        P, Q, R = spectra.phase_parts(system, omegas)
        if phi_pos is not None:
            phis = axes[phi_pos].values
            raw = (
                np.exp(-2j * phis)[None, :] * P[:, None]
                + Q[:, None]
                + np.exp(2j * phis)[None, :] * R[:, None]
            )
            s = spectra.real_nsd(raw, "output NSD")
            if phi_pos < omega_pos:
                s = s.T
        elif spec.phi == "optimal":
            _, s = spectra.optimum_from_parts(P, Q)
        else:
            s = spectra.nsd_from_parts(P, Q, R, float(spec.phi))

        values[selector] = s if spec.quantity == "nsd" else spectra.squeezing_db(s)
        above_vacuum[selector] = s > 0.5

    return SweepResult(
        spec=spec,
        coords=tuple(ax.values for ax in axes),
        values=values,
        stable_mask=stable_mask,
        above_vacuum_mask=above_vacuum,
        max_real_eig=max_real_eig,
        aux=aux,
    )


# ---------------------------------------------------------------------------
# Bundled sweep presets.  Axis ranges not pinned by the documented scenarios
# use the defaults: phi in [0, pi], delta_a in [0, omega_b],
# delta_d in [-0.2, 1]*omega_b, omega in [-2, 2]*omega_b.
# ---------------------------------------------------------------------------

_PHI_REF = 0.75 * math.pi


def _fixed_drive_base() -> SystemParams:
    return paper_preset("fig2a").replace(drive=DriveAmplitude(baseline_drive_amplitude()))


def _spec_fig2a() -> SweepSpec:
    base = paper_preset("fig2a")
    wb = base.omega_b
    return SweepSpec(
        base=base,
        axes=(
            SweepAxis.linear("omega", -2 * wb, 2 * wb, 2001),
            SweepAxis.explicit("phi", [0.9 * math.pi, 0.75 * math.pi, 0.6 * math.pi]),
        ),
        quantity="nsd",
        name="fig2a",
    )


def _spec_fig2b() -> SweepSpec:
    base = paper_preset("fig2a")
    wb = base.omega_b
    return SweepSpec(
        base=base,
        axes=(
            SweepAxis.linear("omega", -2 * wb, 2 * wb, 201),
            SweepAxis.linear("phi", 0.0, math.pi, 201),
        ),
        quantity="db",
        name="fig2b",
    )


def _spec_fig2c() -> SweepSpec:
    base = paper_preset("fig2a")
    wb = base.omega_b
    return SweepSpec(
        base=base,
        axes=(
            SweepAxis.linear("omega", -2 * wb, 2 * wb, 201),
            SweepAxis.linear("detuning.delta_a", 0.0, wb, 201),
        ),
        quantity="db",
        phi=_PHI_REF,
        name="fig2c",
    )


def _spec_fig2d() -> SweepSpec:
    base = paper_preset("fig2a")
    wb = base.omega_b
    return SweepSpec(
        base=base,
        axes=(
            SweepAxis.linear("omega", -2 * wb, 2 * wb, 201),
            SweepAxis.linear("detuning.delta_d", -0.2 * wb, wb, 201),
        ),
        quantity="db",
        phi=_PHI_REF,
        name="fig2d",
    )


def _spec_fig3a() -> SweepSpec:
    base = _fixed_drive_base()
    return SweepSpec(
        base=base,
        axes=(SweepAxis.linear("couplings.g_db", 0.0, 20.0 * MHZ, 81),),
        quantity="peak_db",
        phi="optimal",
        omega_grid=spectra.default_omega_grid(base.omega_b, num=801),
        extras=("cooperativity",),
        name="fig3a",
    )


def _spec_fig3b() -> SweepSpec:
    base = _fixed_drive_base()
    return SweepSpec(
        base=base,
        axes=(SweepAxis.linear("couplings.g_ad", 0.5 * GHZ, 30.0 * GHZ, 119),),
        quantity="cooperativity",
        extras=("photon_number", "exciton_number"),
        name="fig3b",
    )


def _spec_fig3c() -> SweepSpec:
    base = _fixed_drive_base()
    wb = base.omega_b
    return SweepSpec(
        base=base,
        axes=(
            SweepAxis.linear("omega", -2 * wb, 2 * wb, 2001),
            SweepAxis.explicit("couplings.g_ad", [g * GHZ for g in (20.0, 15.0, 10.0, 8.0, 6.0)]),
        ),
        quantity="db",
        phi="optimal",
        name="fig3c",
    )


def _spec_fig4a() -> SweepSpec:
    base = paper_preset("fig2a")
    wb = base.omega_b
    return SweepSpec(
        base=base,
        axes=(
            SweepAxis.linear("omega", -2 * wb, 2 * wb, 2001),
            SweepAxis.explicit("dissipation.kappa_d", [k * GHZ for k in (2.0, 1.0, 0.5, 0.2)]),
        ),
        quantity="db",
        phi=_PHI_REF,
        name="fig4a",
    )


def _spec_fig4b() -> SweepSpec:
    base = paper_preset("fig2a")
    return SweepSpec(
        base=base,
        axes=(SweepAxis.linear("dissipation.kappa_1", 2.0 * GHZ, 100.0 * GHZ, 99),),
        quantity="peak_db",
        phi=_PHI_REF,
        omega_grid=spectra.default_omega_grid(base.omega_b, num=801),
        name="fig4b",
    )


def _spec_fig4c() -> SweepSpec:
    base = paper_preset("fig2a")
    wb = base.omega_b
    return SweepSpec(
        base=base,
        axes=(
            # the interference dip narrows as g_ab grows; resolve it
            SweepAxis.linear("omega", -2 * wb, 2 * wb, 4001),
            SweepAxis.explicit("couplings.g_ab", [f * base.g_db for f in (0.0, 0.1, 0.2)]),
        ),
        quantity="db",
        phi=_PHI_REF,
        name="fig4c",
    )


_FIG4D_TEMPERATURES = (0.4, 4.0, 40.0, 300.0)


def _spec_fig4d() -> SweepSpec:
    base = paper_preset("fig4d-gad20")
    wb = base.omega_b
    return SweepSpec(
        base=base,
        axes=(
            SweepAxis.linear("omega", -2 * wb, 2 * wb, 2001),
            SweepAxis.explicit("temperature", _FIG4D_TEMPERATURES),
        ),
        quantity="db",
        phi="optimal",
        name="fig4d",
    )


def _spec_fig4d_inset() -> SweepSpec:
    spec = _spec_fig4d()
    return SweepSpec(
        base=paper_preset("fig4d-gad8"),
        axes=spec.axes,
        quantity=spec.quantity,
        phi=spec.phi,
        name="fig4d-inset",
    )


_FIGURES = {
    "fig2a": ("output NSD vs omega at phi = 0.9, 0.75, 0.6 pi", _spec_fig2a),
    "fig2b": ("squeezing (dB) vs omega and phi", _spec_fig2b),
    "fig2c": ("squeezing (dB) vs omega and delta_a at phi = 0.75 pi", _spec_fig2c),
    "fig2d": ("squeezing (dB) vs omega and delta_d at phi = 0.75 pi", _spec_fig2d),
    "fig3a": ("peak squeezing and cooperativity vs g_db at fixed drive power", _spec_fig3a),
    "fig3b": ("cooperativity and mode populations vs g_ad at fixed drive power", _spec_fig3b),
    "fig3c": ("optimal-phase spectra at g_ad/2pi = 20..6 GHz, fixed drive power", _spec_fig3c),
    "fig4a": ("spectra for kappa_d/2pi = 2 GHz down to 200 MHz", _spec_fig4a),
    "fig4b": ("peak squeezing vs kappa_1 with kappa_2 fixed", _spec_fig4b),
    "fig4c": ("spectra at g_ab = 0, 0.1, 0.2 of g_db", _spec_fig4c),
    "fig4d": ("optimal-phase spectra at T = 0.4..300 K, g_ad/2pi = 20 GHz", _spec_fig4d),
    "fig4d-inset": ("optimal-phase spectra at T = 0.4..300 K, g_ad/2pi = 8 GHz", _spec_fig4d_inset),
}

# names that emit more than one sweep when asked for as a single figure
FIGURE_FILES = {name: [name] for name in _FIGURES}
FIGURE_FILES["fig4d"] = ["fig4d", "fig4d-inset"]


def figure_names() -> list[str]:
    return list(_FIGURES)


def figure_description(name: str) -> str:
    if name not in _FIGURES:
        raise ConfigError(f"unknown figure {name!r}; available: {', '.join(_FIGURES)}")
    return _FIGURES[name][0]


def figure_preset(name: str) -> SweepSpec:
    """Sweep spec reproducing one bundled figure panel."""
    if name not in _FIGURES:
        raise ConfigError(f"unknown figure {name!r}; available: {', '.join(_FIGURES)}")
    return _FIGURES[name][1]()
