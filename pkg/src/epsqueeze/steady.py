"""Classical steady state of the driven three-mode system.

The coherent drive displaces all three modes; the displaced amplitudes
define the effective couplings G_ab = g_ab*<a> and G_db = g_db*<d> that
enter the linearized fluctuation dynamics.  With effective detunings given,
the steady state is a closed-form linear solve; with bare detunings, the
static phonon displacement shifts the detunings and a damped fixed-point
iteration finds the self-consistent value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError, ConvergenceError, SingularSteadyStateError
from .params import (
    BareDetunings,
    DriveAmplitude,
    DrivePower,
    DriveTargetCoupling,
    EffectiveDetunings,
    SystemParams,
    drive_amplitude_from_power,
)


@dataclass(frozen=True)
class OperatingPoint:
    """Classical amplitudes and the effective quantities derived from them."""

    a_ss: complex         # cavity amplitude <a>
    d_ss: complex         # exciton amplitude <d>
    b_ss: complex         # phonon amplitude <b>
    delta_a_eff: float    # effective cavity detuning, rad/s
    delta_d_eff: float    # effective exciton detuning, rad/s
    G_ab: complex         # g_ab * <a>, rad/s
    G_db: complex         # g_db * <d>, rad/s
    Omega: float          # drive amplitude actually applied, rad/s


def _steady_denominator(params: SystemParams, delta_a: float, delta_d: float) -> complex:
    chi_a = params.kappa_a / 2.0 + 1j * delta_a
    chi_d = params.kappa_d / 2.0 + 1j * delta_d
    denom = params.g_ad**2 + chi_a * chi_d
    largest = max(params.g_ad**2, abs(chi_a * chi_d))
    if largest == 0.0 or abs(denom) < 1e-30 * largest:
        raise SingularSteadyStateError(
            "steady-state denominator g_ad^2 + chi_a*chi_d vanishes at these "
            f"parameters (|denom| = {abs(denom):.3e} rad^2/s^2)"
        )
    return denom


def _solve_at(params: SystemParams, delta_a: float, delta_d: float,
              omega_drive: float) -> OperatingPoint:
    chi_d = params.kappa_d / 2.0 + 1j * delta_d
    denom = _steady_denominator(params, delta_a, delta_d)
    a = chi_d * omega_drive / denom
    # <d> = -i g_ad <a> / chi_d, written without the chi_d division so the
    # chi_d = 0 case stays finite
    d = -1j * params.g_ad * omega_drive / denom
    b = (1j * params.g_ab * abs(a) ** 2 + 1j * params.g_db * abs(d) ** 2) / (
        params.kappa_b / 2.0 + 1j * params.omega_b
    )
    return OperatingPoint(
        a_ss=a,
        d_ss=d,
        b_ss=b,
        delta_a_eff=delta_a,
        delta_d_eff=delta_d,
        G_ab=params.g_ab * a,
        G_db=params.g_db * d,
        Omega=omega_drive,
    )


def solve_effective(params: SystemParams, omega_drive: float) -> OperatingPoint:
    """Steady state with the effective detunings taken as given (no iteration)."""
    det = params.detuning
    if not isinstance(det, EffectiveDetunings):
        raise ConfigError("solve_effective requires effective detunings")
    return _solve_at(params, det.delta_a, det.delta_d, omega_drive)


def solve_bare(params: SystemParams, omega_drive: float, tol: float = 1e-12,
               max_iter: int = 10_000) -> OperatingPoint:
    """Steady state from bare detunings, iterating the displacement shift.

    The phonon displacement Re<b> shifts the detunings,
    delta_eff = delta + 2*g*Re<b>, which feeds back into the amplitudes.
    A fixed-point iteration on Re<b> with relaxation factor 0.5 (guards
    against oscillatory divergence near bistability) runs until successive
    values agree to `tol` relative.  Returns the branch connected to zero
    drive; no multistability search is attempted.
    """
    det = params.detuning
    if not isinstance(det, BareDetunings):
        raise ConfigError("solve_bare requires bare detunings")

    re_b = 0.0
    residual = float("inf")
    for _ in range(max_iter):
        op = _solve_at(
            params,
            det.delta_a + 2.0 * params.g_ab * re_b,
            det.delta_d + 2.0 * params.g_db * re_b,
            omega_drive,
        )
        new = re_b + 0.5 * (op.b_ss.real - re_b)
        scale = max(abs(new), abs(re_b))
        residual = abs(new - re_b) / scale if scale > 0.0 else 0.0
        re_b = new
        if residual < tol:
            return _solve_at(
                params,
                det.delta_a + 2.0 * params.g_ab * re_b,
                det.delta_d + 2.0 * params.g_db * re_b,
                omega_drive,
            )
    raise ConvergenceError(
        f"displacement shift did not converge in {max_iter} iterations "
        f"(last relative step {residual:.3e}); the classical steady state "
        "may be bistable or unstable here",
        residual=residual,
    )


def drive_for_target_coupling(params: SystemParams, target_gdb: float) -> float:
    """Drive amplitude that makes |G_db| = g_db*|<d>| equal `target_gdb`.

    Inverts the linear amplitude relation; requires effective detunings and
    nonzero g_ad, g_db.
    """
    det = params.detuning
    if not isinstance(det, EffectiveDetunings):
        raise ConfigError("a target-|G_db| drive requires effective detunings")
    if params.g_ad <= 0.0 or params.g_db <= 0.0:
        raise ConfigError(
            "no drive can reach a nonzero |G_db| target with g_ad = "
            f"{params.g_ad} and g_db = {params.g_db} (both must be positive)"
        )
    if target_gdb < 0.0:
        raise ConfigError(f"target |G_db| must be >= 0, got {target_gdb}")
    denom = _steady_denominator(params, det.delta_a, det.delta_d)
    return target_gdb * abs(denom) / (params.g_ad * params.g_db)


def operating_point(params: SystemParams, tol: float = 1e-12,
                    max_iter: int = 10_000) -> OperatingPoint:
    """Resolve the drive specification and solve for the steady state.

    The drive may be given as a fixed amplitude, a fixed laser power (the
    laser frequency omega_0 = omega_d - delta_d is reconstructed from the
    detuning), or a target effective coupling |G_db|.
    """
    drive = params.drive
    if isinstance(drive, DriveAmplitude):
        omega_drive = drive.omega
    elif isinstance(drive, DrivePower):
        omega_0 = params.omega_d - params.detuning.delta_d
        omega_drive = drive_amplitude_from_power(drive.watts, params.kappa_1, omega_0)
    elif isinstance(drive, DriveTargetCoupling):
        omega_drive = drive_for_target_coupling(params, drive.target)
    else:
        raise ConfigError(f"unknown drive specification {drive!r}")

    if isinstance(params.detuning, EffectiveDetunings):
        return solve_effective(params, omega_drive)
    return solve_bare(params, omega_drive, tol=tol, max_iter=max_iter)


def cooperativity(op: OperatingPoint, params: SystemParams) -> float:
    """Exciton-phonon cooperativity C = 4|G_db|^2/(kappa_d*kappa_b)."""
    if params.kappa_d <= 0.0 or params.kappa_b <= 0.0:
        raise ValueError("cooperativity requires kappa_d > 0 and kappa_b > 0")
    return 4.0 * abs(op.G_db) ** 2 / (params.kappa_d * params.kappa_b)
