"""Constants, unit helpers, and the system parameter container.

Every quantity inside the package is an angular frequency in rad/s (or K, W
where noted).  User-facing numbers (CLI flags, CSV headers, preset docs) are
cyclic frequencies: a value quoted as "20 GHz" means omega/2pi = 20 GHz.
Conversion happens only at the I/O boundary, via the dotted-key registry at
the bottom of this module.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable, Union

from .errors import ConfigError

HBAR = 1.054571817e-34  # J s, CODATA 2018
K_B = 1.380649e-23      # J/K, exact SI value

TWO_PI = 2.0 * math.pi

# multiply a cyclic value by these to get rad/s
GHZ = TWO_PI * 1e9
MHZ = TWO_PI * 1e6
THZ = TWO_PI * 1e12

# exp() overflows around 709; above this the occupation is < 1e-304 anyway
_OVERFLOW_EXPONENT = 700.0


def thermal_occupation(omega: float, temperature: float) -> float:
    """Mean thermal occupation 1/(exp(hbar*omega/kB*T) - 1) of a mode.

    Evaluated with expm1 for accuracy at small exponents; returns exactly
    0.0 at zero temperature or when the exponent would overflow.
    """
    if omega <= 0.0:
        raise ValueError(f"mode frequency must be positive, got {omega} rad/s")
    if temperature < 0.0:
        raise ValueError(f"temperature must be >= 0 K, got {temperature}")
    if temperature == 0.0:
        return 0.0
    exponent = HBAR * omega / (K_B * temperature)
    if exponent > _OVERFLOW_EXPONENT:
        return 0.0
    return 1.0 / math.expm1(exponent)


def drive_amplitude_from_power(power: float, kappa_1: float, omega_0: float) -> float:
    """Drive amplitude Omega = sqrt(2*P*kappa_1 / (hbar*omega_0)).

    `power` is the laser power in W reaching the input port with coupling
    rate `kappa_1`, and `omega_0` is the laser (angular) frequency.
    """
    if power < 0.0:
        raise ValueError(f"power must be >= 0 W, got {power}")
    if kappa_1 <= 0.0:
        raise ValueError(f"kappa_1 must be positive, got {kappa_1}")
    if omega_0 <= 0.0:
        raise ValueError(f"omega_0 must be positive, got {omega_0}")
    return math.sqrt(2.0 * power * kappa_1 / (HBAR * omega_0))


def drive_power_from_amplitude(omega_drive: float, kappa_1: float, omega_0: float) -> float:
    """Exact inverse of drive_amplitude_from_power."""
    if omega_drive < 0.0:
        raise ValueError(f"drive amplitude must be >= 0, got {omega_drive}")
    if kappa_1 <= 0.0:
        raise ValueError(f"kappa_1 must be positive, got {kappa_1}")
    if omega_0 <= 0.0:
        raise ValueError(f"omega_0 must be positive, got {omega_0}")
    return omega_drive**2 * HBAR * omega_0 / (2.0 * kappa_1)


@dataclass(frozen=True)
class EffectiveDetunings:
    """Detunings already including the static displacement shift.

    This is the primary parameterization: operating points are quoted
    directly in terms of the shifted values, so no self-consistency
    iteration is needed.
    """

    delta_a: float  # cavity detuning, rad/s
    delta_d: float  # exciton detuning, rad/s


@dataclass(frozen=True)
class BareDetunings:
    """Bare drive detunings; the displacement shift is solved for."""

    delta_a: float
    delta_d: float


@dataclass(frozen=True)
class DriveAmplitude:
    """Fixed drive amplitude Omega in rad/s."""

    omega: float


@dataclass(frozen=True)
class DrivePower:
    """Fixed laser power in W at the input port."""

    watts: float


@dataclass(frozen=True)
class DriveTargetCoupling:
    """Drive chosen so the effective exciton-phonon coupling |G_db| hits a target (rad/s)."""

    target: float


Detunings = Union[EffectiveDetunings, BareDetunings]
DriveSpec = Union[DriveAmplitude, DrivePower, DriveTargetCoupling]


@dataclass(frozen=True)
class SystemParams:
    """Full parameter set of the driven cavity-exciton-phonon system.

    All frequencies and rates are angular (rad/s).  The total cavity decay
    kappa_a = kappa_1 + kappa_2 is derived, never stored, so the split is
    consistent by construction.  `omega_a` defaults to `omega_d` (the two
    modes are near-resonant; it only enters bath occupations, the dynamics
    see detunings only).
    """

    omega_b: float            # phonon frequency
    omega_d: float            # exciton frequency (occupations, drive power conversion)
    kappa_1: float            # cavity input-port decay
    kappa_2: float            # all other cavity decay channels
    kappa_d: float            # exciton decay
    kappa_b: float            # phonon decay
    g_ad: float               # cavity-exciton (beamsplitter) coupling
    g_ab: float               # cavity-phonon dispersive coupling
    g_db: float               # exciton-phonon dispersive coupling
    temperature: float        # bath temperature, K
    detuning: Detunings
    drive: DriveSpec
    omega_a: float | None = None  # cavity frequency; None -> omega_d (always float after init)

    def __post_init__(self):
        if self.omega_a is None:
            object.__setattr__(self, "omega_a", self.omega_d)
        for name in ("kappa_1", "kappa_2", "kappa_d", "kappa_b"):
            if getattr(self, name) < 0.0:
                raise ConfigError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.omega_b <= 0.0:
            raise ConfigError(f"omega_b must be positive, got {self.omega_b}")
        if self.omega_d <= 0.0:
            raise ConfigError(f"omega_d must be positive, got {self.omega_d}")
        if self.temperature < 0.0:
            raise ConfigError(f"temperature must be >= 0 K, got {self.temperature}")

    @property
    def kappa_a(self) -> float:
        """Total cavity decay rate, kappa_1 + kappa_2."""
        return self.kappa_1 + self.kappa_2

    def replace(self, **changes) -> "SystemParams":
        return dataclasses.replace(self, **changes)


# ---------------------------------------------------------------------------
# Dotted-key registry: the single vocabulary for --set flags and sweep axes.
#
# `scale` converts the user-facing value to internal units by multiplication;
# detunings are instead quoted in multiples of omega_b, which depends on the
# params the key is applied to, so those use `relative_to_omega_b`.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParamKey:
    unit: str
    scale: float
    apply: Callable[[SystemParams, float], SystemParams]  # takes internal value
    doc: str
    relative_to_omega_b: bool = False

    def to_internal(self, params: SystemParams, value: float) -> float:
        if self.relative_to_omega_b:
            return value * params.omega_b
        return value * self.scale

    def to_display(self, params: SystemParams, internal: float) -> float:
        if self.relative_to_omega_b:
            return internal / params.omega_b
        return internal / self.scale


def _set_field(name: str) -> Callable[[SystemParams, float], SystemParams]:
    def apply(p: SystemParams, v: float) -> SystemParams:
        return p.replace(**{name: v})
    return apply


def _set_detuning(name: str) -> Callable[[SystemParams, float], SystemParams]:
    def apply(p: SystemParams, v: float) -> SystemParams:
        return p.replace(detuning=dataclasses.replace(p.detuning, **{name: v}))
    return apply


PARAM_KEYS: dict[str, ParamKey] = {
    "frequencies.omega_b": ParamKey("GHz", GHZ, _set_field("omega_b"), "phonon frequency"),
    "frequencies.omega_d": ParamKey("THz", THZ, _set_field("omega_d"), "exciton frequency"),
    "frequencies.omega_a": ParamKey("THz", THZ, _set_field("omega_a"), "cavity frequency"),
    "dissipation.kappa_1": ParamKey("GHz", GHZ, _set_field("kappa_1"), "cavity input-port decay"),
    "dissipation.kappa_2": ParamKey("GHz", GHZ, _set_field("kappa_2"), "other cavity decay"),
    "dissipation.kappa_d": ParamKey("GHz", GHZ, _set_field("kappa_d"), "exciton decay"),
    "dissipation.kappa_b": ParamKey("MHz", MHZ, _set_field("kappa_b"), "phonon decay"),
    "couplings.g_ad": ParamKey("GHz", GHZ, _set_field("g_ad"), "cavity-exciton coupling"),
    "couplings.g_ab": ParamKey("MHz", MHZ, _set_field("g_ab"), "cavity-phonon coupling"),
    "couplings.g_db": ParamKey("MHz", MHZ, _set_field("g_db"), "exciton-phonon coupling"),
    "detuning.delta_a": ParamKey(
        "omega_b", 1.0, _set_detuning("delta_a"), "cavity detuning", relative_to_omega_b=True
    ),
    "detuning.delta_d": ParamKey(
        "omega_b", 1.0, _set_detuning("delta_d"), "exciton detuning", relative_to_omega_b=True
    ),
    "temperature": ParamKey("K", 1.0, _set_field("temperature"), "bath temperature"),
    "drive.amplitude": ParamKey(
        "THz", THZ, lambda p, v: p.replace(drive=DriveAmplitude(v)), "fixed drive amplitude"
    ),
    "drive.power": ParamKey(
        "mW", 1e-3, lambda p, v: p.replace(drive=DrivePower(v)), "fixed laser power"
    ),
    "drive.target_gdb": ParamKey(
        "GHz", GHZ, lambda p, v: p.replace(drive=DriveTargetCoupling(v)),
        "drive solved for a target |G_db|",
    ),
}


def _unknown_key_error(key: str) -> ConfigError:
    known = ", ".join(sorted(PARAM_KEYS))
    return ConfigError(f"unknown parameter key {key!r}; valid keys: {known}")


def set_param(params: SystemParams, key: str, value: float) -> SystemParams:
    """Apply one dotted-key override with `value` in the key's display unit."""
    try:
        spec = PARAM_KEYS[key]
    except KeyError:
        raise _unknown_key_error(key) from None
    return spec.apply(params, spec.to_internal(params, value))


def set_param_internal(params: SystemParams, key: str, value: float) -> SystemParams:
    """Apply one dotted-key override with `value` already in internal units."""
    try:
        spec = PARAM_KEYS[key]
    except KeyError:
        raise _unknown_key_error(key) from None
    return spec.apply(params, value)
