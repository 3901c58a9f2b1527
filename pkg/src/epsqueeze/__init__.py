"""Squeezing spectra of a driven cavity-exciton-phonon system.

The package models three coupled bosonic modes (cavity, exciton, phonon)
driven by a classical laser. It solves the classical operating point,
linearizes the fluctuations, and computes stationary noise spectral
densities of output and intracavity quadratures, including the analytic
optimum over the homodyne angle.

Quick start::

    from epsqueeze import paper_preset, operating_point, build_system
    from epsqueeze import default_omega_grid, quadrature_spectrum, summarize

    params = paper_preset("fig2a")
    op = operating_point(params)
    system = build_system(op, params)
    spectrum = quadrature_spectrum(system, default_omega_grid(params.omega_b))
    print(summarize(spectrum).max_db)
"""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    ConvergenceError,
    InternalConsistencyError,
    PhysicsError,
    SingularSteadyStateError,
    SingularTransferError,
    UnstableSystemError,
)
from .params import (
    GHZ,
    HBAR,
    K_B,
    MHZ,
    PARAM_KEYS,
    THZ,
    TWO_PI,
    BareDetunings,
    DriveAmplitude,
    DrivePower,
    DriveTargetCoupling,
    EffectiveDetunings,
    SystemParams,
    drive_amplitude_from_power,
    drive_power_from_amplitude,
    set_param,
    set_param_internal,
    thermal_occupation,
)
from .steady import (
    OperatingPoint,
    cooperativity,
    drive_for_target_coupling,
    operating_point,
    solve_bare,
    solve_effective,
)
from .presets import paper_preset, preset_description, preset_names
from .dynamics import (
    DoubledLinearSystem,
    StabilityReport,
    TransferMatrix,
    build_system,
    lyapunov_covariance,
    pair_swap,
    stability,
    transfer,
    transfer_many,
)
from .spectra import (
    PhaseOptimum,
    QuadratureSpectrum,
    SqueezingSummary,
    default_omega_grid,
    nsd_from_parts,
    nsd_intracavity,
    nsd_output,
    optimal_phase,
    optimum_from_parts,
    phase_parts,
    quadrature_spectrum,
    squeezing_db,
    summarize,
)
from .sweeps import (
    SweepAxis,
    SweepResult,
    SweepSpec,
    figure_description,
    figure_names,
    figure_preset,
    run_sweep,
)

__all__ = [
    "__version__",
    "ConfigError",
    "PhysicsError",
    "SingularSteadyStateError",
    "ConvergenceError",
    "UnstableSystemError",
    "SingularTransferError",
    "InternalConsistencyError",
    "HBAR",
    "K_B",
    "TWO_PI",
    "GHZ",
    "MHZ",
    "THZ",
    "SystemParams",
    "EffectiveDetunings",
    "BareDetunings",
    "DriveAmplitude",
    "DrivePower",
    "DriveTargetCoupling",
    "PARAM_KEYS",
    "set_param",
    "set_param_internal",
    "thermal_occupation",
    "drive_amplitude_from_power",
    "drive_power_from_amplitude",
    "OperatingPoint",
    "operating_point",
    "solve_effective",
    "solve_bare",
    "drive_for_target_coupling",
    "cooperativity",
    "paper_preset",
    "preset_names",
    "preset_description",
    "DoubledLinearSystem",
    "build_system",
    "pair_swap",
    "stability",
    "StabilityReport",
    "transfer",
    "transfer_many",
    "TransferMatrix",
    "lyapunov_covariance",
    "default_omega_grid",
    "phase_parts",
    "nsd_from_parts",
    "optimum_from_parts",
    "nsd_output",
    "nsd_intracavity",
    "optimal_phase",
    "PhaseOptimum",
    "squeezing_db",
    "QuadratureSpectrum",
    "quadrature_spectrum",
    "SqueezingSummary",
    "summarize",
    "SweepAxis",
    "SweepSpec",
    "SweepResult",
    "run_sweep",
    "figure_names",
    "figure_description",
    "figure_preset",
]
