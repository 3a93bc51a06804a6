"""atomech - Domain Errors

All errors raised on purpose by the package derive from AtomechError so the
CLI can map them onto exit codes in one place.
"""

from __future__ import annotations


class AtomechError(Exception):
    """Base class."""


class ConfigError(AtomechError):
    """Config file missing, unreadable or invalid."""

    def __init__(self, message: str, *, path: str | None = None, field: str | None = None):
        self.path = path
        self.field = field
        where = f" [{field}]" if field else ""
        src = f" ({path})" if path else ""
        super().__init__(f"{message}{where}{src}")


class Unstable(AtomechError):
    """Drift matrix has an eigenvalue with non-negative real part."""

    def __init__(self, spectral_abscissa: float):
        self.spectral_abscissa = spectral_abscissa
        super().__init__(f"unstable drift: max Re(lambda) = {spectral_abscissa:.6g}")


class UnphysicalState(AtomechError):
    """Covariance violates the uncertainty relation."""


class CapExceeded(AtomechError):
    """Truncated space too large for a dense Liouvillian."""


class DegenerateSteadyState(AtomechError):
    """Liouvillian null space has dimension > 1."""


class TruncationSuspect(AtomechError):
    """Steady state leaks into the last Fock levels."""

    def __init__(self, mode: str, population: float, tolerance: float):
        self.mode = mode
        self.population = population
        self.tolerance = tolerance
        super().__init__(
            f"boundary population of {mode} is {population:.3e} (> {tolerance:.1e}); "
            "increase the truncation"
        )


class HierarchyViolation(AtomechError):
    """Collision step too coarse for the coupling / frequency scales."""


class FitRejected(AtomechError):
    """Generator fit residual above threshold."""

    def __init__(self, residual: float, threshold: float):
        self.residual = residual
        self.threshold = threshold
        super().__init__(f"generator fit residual {residual:.3e} above threshold {threshold:.1e}")


class NoFeasiblePoint(AtomechError):
    """No evaluated point satisfies the constraint set."""

    def __init__(self, tightest: str, slack: float):
        self.tightest = tightest
        self.slack = slack
        super().__init__(f"no feasible point; tightest violated constraint: {tightest} (slack {slack:.3g})")


class SolverFailure(AtomechError):
    """Numerical solver failed or missed its accuracy contract."""
