"""Scattering coefficients a, b from propagated Jost states; spectral sweeps."""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .grids import JostState, SampledPotential, SchemeParams
from .propagators import propagate

# log of the largest finite double; exponents beyond this overflow
_LOG_HUGE = 709.0
_MIN_ABS_A = 1e-300


@dataclass(frozen=True)
class ScatteringSample:
    """One (zeta, a, b) scattering triple.

    b_underflow marks a b-component that was lost to underflow during
    propagation and is reported as 0: off the real axis b is exponentially
    ill-conditioned, so the loss is flagged rather than guessed around.
    """

    zeta: complex
    a: complex
    b: complex
    b_underflow: bool = False


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform grid of real spectral points xi_j = start + j * step."""

    n_points: int
    step: float
    start: float

    def __post_init__(self):
        if self.n_points < 2:
            raise ValueError("spectral grid needs at least 2 points")
        if not (math.isfinite(self.step) and self.step > 0):
            raise ValueError("spectral step must be positive and finite")

    @staticmethod
    def _checked_count(n_points) -> int:
        n_points = int(n_points)
        if n_points < 2:
            raise ValueError("spectral grid needs at least 2 points")
        return n_points

    @property
    def half_width(self) -> float:
        return -self.start

    @property
    def values(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.n_points)

    @classmethod
    def fourier_convention(cls, potential: SampledPotential, n_points: int | None = None) -> "SpectralGrid":
        """Spectral grid matched to the time grid, discrete-Fourier style.

        Step pi/(2L), half-width pi/(2 tau), and by default the same number of
        points as the time grid (2M + 1), which makes the endpoints land
        exactly on +-pi/(2 tau).  An explicit n_points keeps the span and
        adjusts the step.
        """
        grid = potential.grid
        half = math.pi / (2.0 * grid.step)
        if n_points is None:
            return cls(n_points=grid.node_count, step=math.pi / (2.0 * grid.half_width), start=-half)
        n_points = cls._checked_count(n_points)
        return cls(n_points=n_points, step=2.0 * half / (n_points - 1), start=-half)

    @classmethod
    def uniform(cls, xi_max: float, n_points: int) -> "SpectralGrid":
        """Plain symmetric grid on [-xi_max, xi_max]."""
        n_points = cls._checked_count(n_points)
        return cls(n_points=n_points, step=2.0 * xi_max / (n_points - 1), start=-float(xi_max))


def extract_ab(final: JostState, zeta: complex) -> ScatteringSample:
    """Scattering coefficients from the propagated state at t_end = L + tau/2.

    a = exp(s) v1 exp(+i zeta t_end), b = exp(s) v2 exp(-i zeta t_end).  The
    b combination is evaluated in log space so the growth factor
    exp(Im zeta * t_end) never meets a denormal partner.
    """
    zeta = complex(zeta)
    t_end = final.layer_time
    s = final.log_scale
    v1, v2 = complex(final.v[0]), complex(final.v[1])

    a = v1 * cmath.exp(s + 1j * zeta * t_end)

    b_exponent = s + zeta.imag * t_end
    if v2 == 0.0:
        # Underflow is only suspicious when a large compensating factor means
        # a representable b could have been lost during propagation.
        return ScatteringSample(zeta=zeta, a=a, b=0.0j, b_underflow=b_exponent > _LOG_HUGE)
    log_b = cmath.log(v2) + complex(b_exponent, -zeta.real * t_end)
    if log_b.real > _LOG_HUGE:
        # The surviving v2 is contamination noise amplified beyond double
        # range; there is no trustworthy digit in it, so flag instead of
        # reporting a fabricated magnitude.
        return ScatteringSample(zeta=zeta, a=a, b=0.0j, b_underflow=True)
    b = cmath.exp(log_b)
    return ScatteringSample(zeta=zeta, a=a, b=b)


def continuous_sweep(
    potential: SampledPotential,
    grid: SpectralGrid,
    params: SchemeParams,
    threads: int = 1,
) -> list[ScatteringSample]:
    """One independent propagate + extract per spectral point, order preserved.

    Points are pure, independent work items; with threads > 1 they are
    evaluated concurrently (the propagation kernel releases the GIL) and the
    output is identical to the sequential result.
    """

    def one(xi: float) -> ScatteringSample:
        z = complex(xi)
        return extract_ab(propagate(potential, z, params), z)

    xis = [float(x) for x in grid.values]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, xis))
    return [one(xi) for xi in xis]


def reflection(sample: ScatteringSample) -> complex:
    """Reflection coefficient b / a."""
    if abs(sample.a) <= _MIN_ABS_A:
        raise ValueError("|a| too small for a reflection coefficient (zero of a on the grid?)")
    return sample.b / sample.a
