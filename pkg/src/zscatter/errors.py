"""Exception types shared across the solver."""


class SolverError(Exception):
    """Base class for numerical failures inside the scattering solver."""


class SingularBracketError(SolverError):
    """Fourth-order bracket matrix is numerically singular.

    Signals a pathologically large step * |q jump|; the implicit bracket
    of the fourth-order scheme cannot be inverted reliably.
    """


class EigenvalueSearchError(SolverError):
    """Newton refinement failed: divergence, iteration cap, or a'(zeta) ~ 0."""


class RoundoffFloorError(SolverError):
    """Both embedded-grid deviations sit at the roundoff floor.

    An order estimate computed from them would be meaningless noise.
    """


class SignalFormatError(ValueError):
    """Signal file is malformed (ragged rows, bad grid, non-finite data)."""
