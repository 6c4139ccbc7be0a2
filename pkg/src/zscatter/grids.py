"""Core domain types: time grids, sampled potentials, scheme parameters, Jost states."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Rescaling window for propagated Jost vectors.  The window is wide enough
# that rescaling is rare, yet exponential growth of the solution for complex
# zeta (Im(zeta) * half_width up to ~700) never overflows a double.
RESCALE_UPPER = 16.0
RESCALE_LOWER = 1.0 / 16.0

FOURTH_ORDER_SUM = 1.0 / 24.0  # alpha + gamma = beta + delta in the 4th-order family
CONSERVATIVE_ALPHA = 1.0 / 48.0  # the unitary (Cayley) member of the family


@dataclass(frozen=True)
class UniformGrid:
    """Uniform time grid with 2*half_steps + 1 nodes covering [-half_width, half_width].

    The integer half_steps is the ground truth; the step is derived from it so
    node arithmetic cannot drift over a full traversal.  Nodes are generated
    as (n - half_steps) * step, which makes the grid exactly symmetric about
    t = 0 in floating point.
    """

    half_width: float
    half_steps: int

    def __post_init__(self):
        if not (isinstance(self.half_steps, (int, np.integer)) and self.half_steps >= 1):
            raise ValueError(f"half_steps must be a positive integer, got {self.half_steps!r}")
        if not (math.isfinite(self.half_width) and self.half_width > 0):
            raise ValueError(f"half_width must be positive and finite, got {self.half_width!r}")

    @property
    def step(self) -> float:
        return self.half_width / self.half_steps

    @property
    def node_count(self) -> int:
        return 2 * self.half_steps + 1

    @property
    def nodes(self) -> np.ndarray:
        return (np.arange(self.node_count) - self.half_steps) * self.step

    def node(self, n: int) -> float:
        return (n - self.half_steps) * self.step

    @property
    def edge_time(self) -> float:
        """Half-layer time half_width + step/2 where propagation starts/ends."""
        return (self.half_steps + 0.5) * self.step


@dataclass(frozen=True)
class SampledPotential:
    """Complex signal q sampled on a uniform grid; q is zero outside [-L, L].

    sigma = +1 selects the focusing (anomalous-dispersion) problem, -1 the
    defocusing one.  Immutable after construction and safe to share between
    threads.
    """

    grid: UniformGrid
    samples: np.ndarray
    sigma: int = 1
    max_abs: float = field(init=False)

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1 or samples.shape[0] != self.grid.node_count:
            raise ValueError(
                f"expected {self.grid.node_count} samples, got array of shape {samples.shape}"
            )
        if not np.all(np.isfinite(samples.view(np.float64))):
            raise ValueError("potential samples must be finite")
        if self.sigma not in (1, -1):
            raise ValueError(f"sigma must be +1 or -1, got {self.sigma!r}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sigma", int(self.sigma))
        object.__setattr__(self, "max_abs", float(np.max(np.abs(samples))))


def validate_potential(samples, half_width: float, sigma: int = 1) -> SampledPotential:
    """Build a SampledPotential from raw samples, rejecting malformed input.

    The sample count must be odd (2M + 1 nodes) and at least 3, every value
    finite, and half_width positive.
    """
    arr = np.asarray(samples, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("samples must be a non-empty 1-d array")
    if arr.size % 2 == 0:
        raise ValueError(f"even node count {arr.size}: grid needs 2M+1 nodes")
    if arr.size < 3:
        raise ValueError("need at least 3 nodes (M >= 1)")
    grid = UniformGrid(half_width=float(half_width), half_steps=(arr.size - 1) // 2)
    return SampledPotential(grid=grid, samples=arr, sigma=sigma)


@dataclass(frozen=True)
class SchemeParams:
    """Transfer-scheme selector.

    kind "bo" is the second-order one-exponential-per-layer scheme; "ct4" the
    fourth-order conservative transformed scheme (alpha = beta = 1/48, unitary
    for real spectral parameter with sigma = +1); "family" any member of the
    fourth-order two-parameter family.  The remaining family coefficients are
    always gamma = 1/24 - alpha and delta = 1/24 - beta, which is exactly the
    fourth-order condition.
    """

    kind: str
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if self.kind not in ("bo", "ct4", "family"):
            raise ValueError(f"unknown scheme kind {self.kind!r}")
        if self.kind == "ct4":
            if self.alpha not in (0.0, CONSERVATIVE_ALPHA) or self.beta not in (0.0, CONSERVATIVE_ALPHA):
                raise ValueError("ct4 fixes alpha = beta = 1/48")
            object.__setattr__(self, "alpha", CONSERVATIVE_ALPHA)
            object.__setattr__(self, "beta", CONSERVATIVE_ALPHA)
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("alpha and beta must be finite")

    @classmethod
    def bo(cls) -> "SchemeParams":
        return cls(kind="bo")

    @classmethod
    def ct4(cls) -> "SchemeParams":
        return cls(kind="ct4")

    @classmethod
    def family(cls, alpha: float, beta: float) -> "SchemeParams":
        return cls(kind="family", alpha=float(alpha), beta=float(beta))

    @property
    def gamma(self) -> float:
        return FOURTH_ORDER_SUM - self.alpha

    @property
    def delta(self) -> float:
        return FOURTH_ORDER_SUM - self.beta

    @property
    def is_fourth_order(self) -> bool:
        return self.kind in ("ct4", "family")


@dataclass(frozen=True)
class JostState:
    """Propagated 2-vector in scaled form: the physical vector is exp(log_scale) * v.

    Keeping the scale in a separate real exponent lets the propagation survive
    the exp(Im(zeta) * t) growth of Jost solutions for complex zeta without
    overflowing.
    """

    v: np.ndarray
    log_scale: float
    layer_time: float

    def __post_init__(self):
        v = np.asarray(self.v, dtype=np.complex128)
        if v.shape != (2,):
            raise ValueError("Jost vector must have exactly 2 components")
        object.__setattr__(self, "v", v)

    def vector(self) -> np.ndarray:
        """Materialized physical vector; may overflow for extreme log_scale."""
        return self.v * math.exp(self.log_scale)

    def norm_sq(self) -> float:
        """Physical squared 2-norm exp(2s) * (|v1|^2 + |v2|^2)."""
        return math.exp(2.0 * self.log_scale) * float(np.sum(np.abs(self.v) ** 2))

    def rescaled(self) -> "JostState":
        """Renormalize v into the [RESCALE_LOWER, RESCALE_UPPER] window.

        The scaling factor is a power of two so that v is divided exactly;
        only the log-scale update rounds.  The represented physical vector
        is unchanged up to that rounding.
        """
        m = float(np.max(np.abs(self.v)))
        if m == 0.0 or RESCALE_LOWER <= m <= RESCALE_UPPER:
            return self
        factor = 2.0 ** round(math.log2(m))
        return JostState(
            v=self.v / factor,
            log_scale=self.log_scale + math.log(factor),
            layer_time=self.layer_time,
        )
