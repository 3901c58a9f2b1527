"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration problems exit with 2,
physics-level failures (instability, singular configurations,
non-convergence) with 3, and internal consistency violations with 4.
"""


class ConfigError(ValueError):
    """Bad user-supplied configuration (unknown key, malformed value, ...)."""


class PhysicsError(RuntimeError):
    """Base class for failures rooted in the physical configuration."""


class SingularSteadyStateError(PhysicsError):
    """The classical steady-state equations are singular at these parameters."""


class ConvergenceError(PhysicsError):
    """Self-consistent iteration failed to converge.

    Carries the last relative residual so callers can report how far off
    the iteration was when it gave up.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class UnstableSystemError(PhysicsError):
    """No stationary state exists: the drift matrix has a non-decaying mode."""

    def __init__(self, max_real_eig: float):
        super().__init__(
            "linearized dynamics are unstable: max Re(eigenvalue) = "
            f"{max_real_eig:.6g} rad/s (must be negative for a stationary "
            "spectrum)"
        )
        self.max_real_eig = max_real_eig


class SingularTransferError(PhysicsError):
    """The frequency-domain response matrix is singular at this frequency."""

    def __init__(self, omega: float):
        super().__init__(
            f"(-i omega I - M) is singular at omega = {omega:.6g} rad/s; "
            "the system sits on the stability boundary"
        )
        self.omega = omega


class InternalConsistencyError(RuntimeError):
    """A structural identity that must hold to roundoff was violated."""
