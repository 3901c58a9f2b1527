"""Linearized fluctuation dynamics in the doubled complex basis.

The state vector is v = (da, da', dd, dd', db, db') where x' denotes the
conjugate partner of mode x: each operator and its adjoint are separate
basis elements, which keeps the dynamics linear in the presence of the
counter-rotating dispersive terms.  The drift obeys dv/dt = M v + B n with
eight noise channels n = (a1, a1', a2, a2', d, d', b, b'), two per bath
(the cavity sees two ports).

Conventions that everything downstream relies on:

* M satisfies the conjugation symmetry M = Sigma M* Sigma, with Sigma the
  permutation swapping each (mode, partner) pair; the partner rows are
  constructed from the plain rows through exactly this relation.
* B holds sqrt(kappa) factors on matching channels only.
* Dn holds the frequency-domain noise correlations
  <n_i(w) n_j(w')> = 2*pi*(Dn)_ij * delta(w + w'), block diagonal with
  [[0, N+1], [N, 0]] per channel pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import InternalConsistencyError, SingularTransferError, UnstableSystemError
from .params import SystemParams, thermal_occupation
from .steady import OperatingPoint

MODE_INDEX = {"a": 0, "d": 2, "b": 4}

N_MODES = 3
N_CHANNELS = 4


def pair_swap(n_pairs: int) -> np.ndarray:
    """Permutation matrix swapping (2k, 2k+1) for each pair k."""
    size = 2 * n_pairs
    sigma = np.zeros((size, size))
    for k in range(n_pairs):
        sigma[2 * k, 2 * k + 1] = 1.0
        sigma[2 * k + 1, 2 * k] = 1.0
    return sigma


@dataclass(eq=False)
class DoubledLinearSystem:
    """Drift matrix, noise input matrix, and noise correlations.

    Treated as immutable after construction; the max-real-eigenvalue is
    cached since stability gets checked once per spectrum but the matrix
    never changes.
    """

    M: np.ndarray   # (6, 6) complex
    B: np.ndarray   # (6, 8) real
    Dn: np.ndarray  # (8, 8) real
    _max_re: float | None = field(default=None, init=False, repr=False)

    def max_real_eigenvalue(self) -> float:
        if self._max_re is None:
            eigenvalues = np.linalg.eigvals(self.M)
            self._max_re = float(eigenvalues.real.max())
        return self._max_re


def build_system(op: OperatingPoint, params: SystemParams) -> DoubledLinearSystem:
    """Assemble M, B, Dn from an operating point.

    Only the plain rows (da, dd, db) are written out; the partner rows
    follow from M = Sigma M* Sigma, so the symmetry holds exactly by
    construction rather than by careful bookkeeping.
    """
    G_ab, G_db = op.G_ab, op.G_db

    upper = np.zeros((6, 6), dtype=complex)
    # cavity: -(kappa_a/2 + i*delta_a) da - i g_ad dd + i G_ab (db + db')
    upper[0, 0] = -(params.kappa_a / 2.0 + 1j * op.delta_a_eff)
    upper[0, 2] = -1j * params.g_ad
    upper[0, 4] = 1j * G_ab
    upper[0, 5] = 1j * G_ab
    # exciton: -(kappa_d/2 + i*delta_d) dd - i g_ad da + i G_db (db + db')
    upper[2, 2] = -(params.kappa_d / 2.0 + 1j * op.delta_d_eff)
    upper[2, 0] = -1j * params.g_ad
    upper[2, 4] = 1j * G_db
    upper[2, 5] = 1j * G_db
    # phonon: -(kappa_b/2 + i*omega_b) db + i(G_ab* da + G_ab da') + i(G_db* dd + G_db dd')
    upper[4, 4] = -(params.kappa_b / 2.0 + 1j * params.omega_b)
    upper[4, 0] = 1j * np.conj(G_ab)
    upper[4, 1] = 1j * G_ab
    upper[4, 2] = 1j * np.conj(G_db)
    upper[4, 3] = 1j * G_db

    sigma = pair_swap(N_MODES)
    M = upper + sigma @ upper.conj() @ sigma

    B = np.zeros((6, 8))
    B[0, 0] = B[1, 1] = np.sqrt(params.kappa_1)
    B[0, 2] = B[1, 3] = np.sqrt(params.kappa_2)
    B[2, 4] = B[3, 5] = np.sqrt(params.kappa_d)
    B[4, 6] = B[5, 7] = np.sqrt(params.kappa_b)

    n_a = thermal_occupation(params.omega_a, params.temperature)
    n_d = thermal_occupation(params.omega_d, params.temperature)
    n_b = thermal_occupation(params.omega_b, params.temperature)
    Dn = np.zeros((8, 8))
    for channel, occupation in enumerate((n_a, n_a, n_d, n_b)):
        Dn[2 * channel, 2 * channel + 1] = occupation + 1.0
        Dn[2 * channel + 1, 2 * channel] = occupation
    return DoubledLinearSystem(M=M, B=B, Dn=Dn)


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    max_real_eig: float
    margin: float


def stability(sys: DoubledLinearSystem, margin: float = 0.0) -> StabilityReport:
    """Stable iff every drift eigenvalue satisfies Re(lambda) < -margin (strict)."""
    max_re = sys.max_real_eigenvalue()
    return StabilityReport(stable=max_re < -margin, max_real_eig=max_re, margin=margin)


@dataclass(frozen=True)
class TransferMatrix:
    omega: float
    matrix: np.ndarray  # (6, 8) complex, (-i w I - M)^{-1} B


def transfer(sys: DoubledLinearSystem, omega: float) -> TransferMatrix:
    """Frequency-domain response (-i*omega*I - M)^{-1} B of v to the inputs."""
    A = -1j * omega * np.eye(6) - sys.M
    try:
        matrix = np.linalg.solve(A, sys.B.astype(complex))
    except np.linalg.LinAlgError:
        raise SingularTransferError(omega) from None
    return TransferMatrix(omega=omega, matrix=matrix)


def transfer_many(sys: DoubledLinearSystem, omegas: np.ndarray) -> np.ndarray:
    """Stacked transfer matrices, shape (len(omegas), 6, 8)."""
    omegas = np.asarray(omegas, dtype=float)
    A = -1j * omegas[:, None, None] * np.eye(6) - sys.M
    rhs = np.broadcast_to(sys.B.astype(complex), (omegas.size, 6, 8))
    try:
        return np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError:
        raise SingularTransferError(float("nan")) from None


def lyapunov_covariance(sys: DoubledLinearSystem) -> np.ndarray:
    """Stationary second moments V = <v v^T> from the Lyapunov equation.

    V solves M V + V M^T + B Dn B^T = 0 with the plain (not conjugate)
    transpose: conjugate operators are separate basis elements here, so the
    doubled-basis equation closes without any complex conjugation.  Used as
    an independent cross-check of the integrated spectra.
    """
    report = stability(sys)
    if not report.stable:
        raise UnstableSystemError(report.max_real_eig)
    forcing = sys.B @ sys.Dn @ sys.B.T
    V = scipy.linalg.solve_sylvester(sys.M, sys.M.T, -forcing.astype(complex))
    residual = sys.M @ V + V @ sys.M.T + forcing
    scale = np.linalg.norm(forcing) + np.linalg.norm(sys.M) * np.linalg.norm(V)
    if scale > 0.0 and np.linalg.norm(residual) > 1e-10 * scale:
        raise InternalConsistencyError(
            "Lyapunov equation residual "
            f"{np.linalg.norm(residual) / scale:.3e} exceeds 1e-10"
        )
    return V
