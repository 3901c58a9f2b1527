"""Stationary noise spectral density of the output quadrature.

The propagating output field leaves through the kappa_1 port,
da_out(w) = sqrt(kappa_1) da(w) - a1_in(w), so its fluctuations are fixed
by the transfer matrix and the input noise statistics.  For the homodyne
quadrature u_phi = (e^{-i phi} da_out + e^{i phi} da_out')/sqrt(2) the
symmetrized noise spectral density is

    S_phi(w) = 1/2 [u_phi(w) Dn u_phi(-w)^T + u_phi(-w) Dn u_phi(w)^T]

with vacuum level 0.5 (see docs/noise_normalization.md for the derivation
of this contraction from the two-time correlators).  Expanding the phase
factors gives the exact decomposition

    S_phi(w) = S0(w) + Re[S2(w) e^{-2 i phi}]

which this module exploits: the phase optimum is analytic, S_min = S0 - |S2|
at phi* = (arg S2 + pi)/2, and whole phase maps cost one transfer solve per
frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, InternalConsistencyError, UnstableSystemError
from .dynamics import MODE_INDEX, DoubledLinearSystem, transfer_many

_IMAG_TOL = 1e-10    # relative imaginary part allowed before declaring inconsistency
_CLAMP = 1e-10       # absolute window of negative values clamped to zero
_SQRT2 = math.sqrt(2.0)


def default_omega_grid(omega_b: float, num: int = 2001, span: float = 2.0) -> np.ndarray:
    """Uniform grid over [-span*omega_b, span*omega_b]."""
    return np.linspace(-span * omega_b, span * omega_b, num)


def _require_stable(sys: DoubledLinearSystem) -> None:
    max_re = sys.max_real_eigenvalue()
    if not max_re < 0.0:
        raise UnstableSystemError(max_re)


def real_nsd(values: np.ndarray, what: str = "NSD") -> np.ndarray:
    """Validate that a spectral density is real and nonnegative.

    The contraction is analytically real; an imaginary part above _IMAG_TOL
    relative, or a negative real part below the clamp window, indicates a
    broken structural identity and raises instead of being papered over.
    """
    arr = np.atleast_1d(np.asarray(values))
    re = np.real(arr).astype(float)
    im = np.imag(arr)
    bad = np.abs(im) > _IMAG_TOL * np.maximum(np.abs(re), 1e-300)
    if np.any(bad):
        i = np.unravel_index(int(np.argmax(np.abs(im))), arr.shape)
        raise InternalConsistencyError(
            f"{what} has imaginary part {im[i]:.3e} against real part "
            f"{re[i]:.3e}; the conjugation structure is broken"
        )
    negative = re < 0.0
    if np.any(re < -_CLAMP):
        raise InternalConsistencyError(
            f"{what} is negative beyond roundoff (min {re.min():.3e})"
        )
    re[negative] = 0.0
    return re.reshape(np.shape(values)) if np.ndim(values) > 0 else re


def output_rows(sys: DoubledLinearSystem, omega: float) -> tuple[np.ndarray, np.ndarray]:
    """Noise-channel coefficient rows of da_out(w) and its conjugate partner."""
    r1, r2 = _rows_many(sys, np.array([float(omega)]), mode=None)
    return r1[0], r2[0]


def _rows_many(sys: DoubledLinearSystem, omegas: np.ndarray,
               mode: str | None) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient rows at each frequency; output field or an intracavity mode."""
    Tm = transfer_many(sys, omegas)
    if mode is None:
        sqrt_k1 = sys.B[0, 0]
        r1 = sqrt_k1 * Tm[:, 0, :]
        r2 = sqrt_k1 * Tm[:, 1, :]
        r1[:, 0] -= 1.0  # the input-output reflection term
        r2[:, 1] -= 1.0
    else:
        if mode not in MODE_INDEX:
            raise ConfigError(f"mode must be one of {sorted(MODE_INDEX)}, got {mode!r}")
        i0 = MODE_INDEX[mode]
        r1 = Tm[:, i0, :]
        r2 = Tm[:, i0 + 1, :]
    return r1, r2


def phase_parts(sys: DoubledLinearSystem, omegas: np.ndarray,
                mode: str | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Coefficients (P, Q, R) with S_phi = e^{-2i phi} P + Q + e^{2i phi} R.

    One stacked solve covers +omega and -omega.  Q is analytically real and
    R = conj(P); both identities hold only to roundoff numerically, so all
    three are returned and validated where they are combined.
    """
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    n = omegas.size
    r1, r2 = _rows_many(sys, np.concatenate([omegas, -omegas]), mode)
    r1p, r1m = r1[:n], r1[n:]
    r2p, r2m = r2[:n], r2[n:]
    Dn = sys.Dn

    def corr(x, y):
        return np.einsum("ni,ij,nj->n", x, Dn, y)

    P = 0.25 * (corr(r1p, r1m) + corr(r1m, r1p))
    Q = 0.25 * (corr(r1p, r2m) + corr(r2m, r1p) + corr(r1m, r2p) + corr(r2p, r1m))
    R = 0.25 * (corr(r2p, r2m) + corr(r2m, r2p))
    return P, Q, R


def nsd_from_parts(P, Q, R, phi: float) -> np.ndarray:
    return real_nsd(np.exp(-2j * phi) * P + Q + np.exp(2j * phi) * R, "output NSD")


def optimum_from_parts(P, Q) -> tuple[np.ndarray, np.ndarray]:
    """Per-point optimal phase and minimized NSD from the decomposition."""
    S0 = real_nsd(Q, "phase-averaged NSD")
    S0 = np.atleast_1d(S0)
    S2 = 2.0 * np.atleast_1d(np.asarray(P))
    amplitude = np.abs(S2)
    phi_star = ((np.angle(S2) + np.pi) / 2.0) % np.pi
    # a vanishing S2 leaves the phase undefined; report 0 by convention
    phi_star = np.where(amplitude <= 1e-14 * np.maximum(S0, 1e-300), 0.0, phi_star)
    s_min = S0 - amplitude
    if np.any(s_min < -_CLAMP):
        raise InternalConsistencyError(
            f"optimized NSD is negative beyond roundoff (min {s_min.min():.3e})"
        )
    s_min = np.maximum(s_min, 0.0)
    return phi_star, s_min


def nsd_output(sys: DoubledLinearSystem, omega: float, phi: float) -> float:
    """Symmetrized NSD of the output quadrature at one frequency and phase."""
    _require_stable(sys)
    r1, r2 = _rows_many(sys, np.array([float(omega), -float(omega)]), mode=None)
    forward = np.exp(-1j * phi)
    u_plus = (forward * r1[0] + np.conj(forward) * r2[0]) / _SQRT2
    u_minus = (forward * r1[1] + np.conj(forward) * r2[1]) / _SQRT2
    s = 0.5 * (u_plus @ sys.Dn @ u_minus + u_minus @ sys.Dn @ u_plus)
    return float(real_nsd(np.array([s]), "output NSD")[0])


def nsd_intracavity(sys: DoubledLinearSystem, omega: float, phi: float,
                    mode: str) -> float:
    """Same contraction as nsd_output but for an internal mode quadrature.

    No input-output subtraction and no sqrt(kappa_1) factor; this is the
    spectrum whose integral must match the Lyapunov covariance, which makes
    it the natural cross-check quantity.
    """
    _require_stable(sys)
    r1, r2 = _rows_many(sys, np.array([float(omega), -float(omega)]), mode=mode)
    forward = np.exp(-1j * phi)
    u_plus = (forward * r1[0] + np.conj(forward) * r2[0]) / _SQRT2
    u_minus = (forward * r1[1] + np.conj(forward) * r2[1]) / _SQRT2
    s = 0.5 * (u_plus @ sys.Dn @ u_minus + u_minus @ sys.Dn @ u_plus)
    return float(real_nsd(np.array([s]), "intracavity NSD")[0])


class PhaseOptimum(NamedTuple):
    phi_star: float  # rad, in [0, pi)
    S_min: float


def optimal_phase(sys: DoubledLinearSystem, omega: float) -> PhaseOptimum:
    """Exact homodyne-phase optimum at one frequency."""
    _require_stable(sys)
    P, Q, _ = phase_parts(sys, np.array([float(omega)]))
    phi_star, s_min = optimum_from_parts(P, Q)
    return PhaseOptimum(phi_star=float(phi_star[0]), S_min=float(s_min[0]))


def squeezing_db(S):
    """Squeezing below vacuum in dB: -10*log10(S/0.5); positive = squeezed."""
    arr = np.asarray(S, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("squeezing_db requires S > 0")
    out = -10.0 * np.log10(arr / 0.5)
    return float(out) if np.ndim(S) == 0 else out


@dataclass(frozen=True)
class QuadratureSpectrum:
    """NSD values over a frequency grid, at fixed or per-point-optimal phase."""

    omegas: np.ndarray
    values: np.ndarray
    phis: np.ndarray        # the phase actually used at each point
    phi: float | str        # the request: a number, or "optimal"
    params_hash: str = ""


def quadrature_spectrum(sys: DoubledLinearSystem, omegas: np.ndarray,
                        phi: float | str = "optimal",
                        params_hash: str = "") -> QuadratureSpectrum:
    """Evaluate the output NSD over a grid."""
    _require_stable(sys)
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    if omegas.size == 0:
        raise ConfigError("empty frequency grid")
    P, Q, R = phase_parts(sys, omegas)
    if isinstance(phi, str):
        if phi != "optimal":
            raise ConfigError(f"phi must be a number or 'optimal', got {phi!r}")
        phis, values = optimum_from_parts(P, Q)
    else:
        values = nsd_from_parts(P, Q, R, float(phi))
        phis = np.full(omegas.shape, float(phi))
    return QuadratureSpectrum(omegas=omegas, values=values, phis=phis,
                              phi=phi, params_hash=params_hash)


@dataclass(frozen=True)
class SqueezingSummary:
    max_db: float
    omega_at_max: float
    phi_at_max: float
    bandwidth_above: dict[float, float]  # dB threshold -> total rad/s measure


def _bandwidth_above(omegas: np.ndarray, db: np.ndarray, threshold: float) -> float:
    """Total measure of {omega : dB(omega) > threshold}, piecewise linear."""
    left, right = db[:-1], db[1:]
    width = np.abs(np.diff(omegas))
    both = (left > threshold) & (right > threshold)
    only_left = (left > threshold) & ~both
    only_right = (right > threshold) & ~both
    total = width[both].sum()
    if np.any(only_left):
        seg = width[only_left] * (left[only_left] - threshold) / (left[only_left] - right[only_left])
        total += seg.sum()
    if np.any(only_right):
        seg = width[only_right] * (right[only_right] - threshold) / (right[only_right] - left[only_right])
        total += seg.sum()
    return float(total)


def summarize(spectrum: QuadratureSpectrum, thresholds=()) -> SqueezingSummary:
    """Peak squeezing, its location, and bandwidth above given dB thresholds."""
    if spectrum.omegas.size == 0:
        raise ConfigError("cannot summarize an empty spectrum")
    db = np.atleast_1d(squeezing_db(spectrum.values))
    peak = int(np.argmax(db))
    return SqueezingSummary(
        max_db=float(db[peak]),
        omega_at_max=float(spectrum.omegas[peak]),
        phi_at_max=float(spectrum.phis[peak]),
        bandwidth_above={float(t): _bandwidth_above(spectrum.omegas, db, float(t))
                         for t in thresholds},
    )
