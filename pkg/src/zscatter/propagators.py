"""Single-interval transfer matrices and full-line Jost propagation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .grids import JostState, SampledPotential, SchemeParams
from .matexp import ZsMatrix


@dataclass(frozen=True)
class StepContext:
    """Three-node stencil feeding one fourth-order transfer step.

    All three layer matrices must share zeta and sigma; only q varies.
    """

    q_prev: ZsMatrix
    q_center: ZsMatrix
    q_next: ZsMatrix
    tau: float
    params: SchemeParams

    def __post_init__(self):
        zetas = {self.q_prev.zeta, self.q_center.zeta, self.q_next.zeta}
        sigmas = {self.q_prev.sigma, self.q_center.sigma, self.q_next.sigma}
        if len(zetas) != 1 or len(sigmas) != 1:
            raise ValueError("stencil matrices must share zeta and sigma")


def bo_transfer(q_center: ZsMatrix, tau: float) -> np.ndarray:
    """Second-order transfer: exact exponential of the frozen layer matrix."""
    e11, e12, e21, e22 = _kernels.expm_entries(
        q_center.zeta, q_center.q, q_center.sigma, float(tau)
    )
    return np.array([[e11, e12], [e21, e22]], dtype=np.complex128)


def family_transfer(ctx: StepContext) -> np.ndarray:
    """Fourth-order transfer matrix from the three-node stencil.

    Reduces exactly to bo_transfer when both neighbors equal the center node.
    Raises SingularBracketError when the implicit bracket cannot be inverted.
    """
    if not ctx.params.is_fourth_order:
        raise ValueError(f"scheme kind {ctx.params.kind!r} has no fourth-order transfer")
    t11, t12, t21, t22 = _kernels.family_entries(
        ctx.q_center.zeta,
        ctx.q_prev.q,
        ctx.q_center.q,
        ctx.q_next.q,
        ctx.q_center.sigma,
        float(ctx.tau),
        ctx.params.alpha,
        ctx.params.beta,
    )
    return np.array([[t11, t12], [t21, t22]], dtype=np.complex128)


def propagate(potential: SampledPotential, zeta: complex, params: SchemeParams) -> JostState:
    """March the Jost solution from -L - tau/2 to L + tau/2.

    Initializes with the exact free solution (exp(-i zeta t), 0) on the left
    half-layer (q vanishes left of -L), applies one transfer per node, and
    returns the scaled state on the right half-layer.  The log scale keeps
    intermediate values bounded for Im(zeta) * L up to ~700.
    """
    zeta = complex(zeta)
    if not np.isfinite(zeta.real) or not np.isfinite(zeta.imag):
        raise ValueError("zeta must be finite")
    grid = potential.grid
    t_edge = grid.edge_time
    v1, v2, log_scale = _kernels.propagate_scaled(
        potential.samples,
        potential.sigma,
        zeta,
        grid.step,
        -t_edge,
        params.alpha,
        params.beta,
        params.is_fourth_order,
    )
    return JostState(
        v=np.array([v1, v2], dtype=np.complex128),
        log_scale=log_scale,
        layer_time=t_edge,
    )
