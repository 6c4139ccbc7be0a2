"""Direct Zakharov-Shabat scattering solver.

Transfer-matrix propagation of Jost solutions with a second-order
exponential scheme ("bo") and a fourth-order conservative transformed scheme
("ct4"), continuous- and discrete-spectrum extraction, energy-balance
verification, and an embedded-grid order harness.
"""

from .analysis import (
    OrderEstimate,
    ParsevalReport,
    c0_time_domain,
    continuous_energy,
    discrete_energy,
    estimate_order,
    min_nodes,
    order_from_deviations,
    parseval_check,
)
from .discrete import DiscreteMode, a_of_zeta, a_prime, refine_eigenvalue
from .errors import (
    EigenvalueSearchError,
    RoundoffFloorError,
    SignalFormatError,
    SingularBracketError,
    SolverError,
)
from .grids import (
    JostState,
    SampledPotential,
    SchemeParams,
    UniformGrid,
    validate_potential,
)
from .matexp import ZsMatrix, conjugate_offdiag, expm
from .potentials import ReferencePotential, make_reference
from .propagators import StepContext, bo_transfer, family_transfer, propagate
from .scattering import (
    ScatteringSample,
    SpectralGrid,
    continuous_sweep,
    extract_ab,
    reflection,
)

__all__ = [
    "DiscreteMode",
    "EigenvalueSearchError",
    "JostState",
    "OrderEstimate",
    "ParsevalReport",
    "ReferencePotential",
    "RoundoffFloorError",
    "SampledPotential",
    "ScatteringSample",
    "SchemeParams",
    "SignalFormatError",
    "SingularBracketError",
    "SolverError",
    "SpectralGrid",
    "StepContext",
    "UniformGrid",
    "ZsMatrix",
    "a_of_zeta",
    "a_prime",
    "bo_transfer",
    "c0_time_domain",
    "conjugate_offdiag",
    "continuous_energy",
    "continuous_sweep",
    "discrete_energy",
    "estimate_order",
    "extract_ab",
    "family_transfer",
    "make_reference",
    "min_nodes",
    "order_from_deviations",
    "parseval_check",
    "propagate",
    "reflection",
    "refine_eigenvalue",
    "validate_potential",
]

__version__ = "0.1.0"
