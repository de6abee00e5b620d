"""Numerical tolerances and default grids shared across the package."""

# normalization / hermiticity slack for inputs
EPS_NORM = 1e-9
EPS_HERM = 1e-9
# eigenvalues within this distance of zero are treated as zero
EPS_PSD = 1e-10
# |q - 1| below this dispatches to the Shannon / von Neumann formula
EPS_Q = 1e-8
# |q - 1| up to this uses the expm1 power-sum route; beyond it, log-sum-exp
NEAR_ONE = 0.5

DEFAULT_Q_GRID = (0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0)


class ValidationError(ValueError):
    """Input violates a distribution or density-matrix invariant."""


class DomainError(ValueError):
    """Parameter outside its admissible range (e.g. q <= 0, x outside [0, 1])."""


class NullConditioningError(ValidationError):
    """Conditioning on an outcome of zero probability."""
