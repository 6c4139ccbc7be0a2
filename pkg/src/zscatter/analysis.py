"""Spectral energies, the n = 0 trace-formula check, order estimation, sampling bound."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .discrete import DiscreteMode
from .errors import RoundoffFloorError
from .grids import SampledPotential, SchemeParams
from .propagators import propagate
from .scattering import ScatteringSample

DEVIATION_FLOOR = 100.0 * np.finfo(float).eps


@dataclass(frozen=True)
class OrderEstimate:
    """Empirical approximation order from two embedded grids (fine = 2x coarse)."""

    xi: float
    m: float
    coarse_half_steps: int
    fine_half_steps: int
    used_fallback: bool = False


@dataclass(frozen=True)
class ParsevalReport:
    """Energy balance |q|^2 integral vs continuous + discrete spectral energies."""

    c0_time: float
    e_continuous: float
    e_discrete: float
    residual: float


def c0_time_domain(potential: SampledPotential) -> float:
    """Signal energy: trapezoid rule over |q_n|^2."""
    return float(np.trapezoid(np.abs(potential.samples) ** 2, dx=potential.grid.step))


def continuous_energy(samples: Sequence[ScatteringSample], d_xi: float) -> float:
    """Continuous-spectrum energy -(1/pi) * integral of ln|a(xi)|^2, trapezoid rule."""
    abs_a = np.array([abs(s.a) for s in samples])
    if np.any(abs_a == 0.0):
        raise ValueError("|a| = 0 on the grid: eigenvalue touching the real axis or broken input")
    integrand = -np.log(abs_a**2) / math.pi
    return float(np.trapezoid(integrand, dx=d_xi))


def discrete_energy(modes: Sequence[DiscreteMode], n: int = 0) -> float:
    """Discrete trace-formula sum; only the n = 0 (energy) case is supported.

    For n = 0 the sum reduces to 4 * sum(Im zeta_k).
    """
    if n != 0:
        raise ValueError("only n = 0 is supported; higher conserved quantities are out of scope")
    total = 0.0j
    for mode in modes:
        zeta = complex(mode.zeta)
        if zeta.imag <= 0:
            raise ValueError(f"discrete mode {zeta} is not in the upper half-plane")
        total += (2j * zeta.conjugate()) ** (n + 1) - (2j * zeta) ** (n + 1)
    return total.real / (n + 1)


def parseval_check(
    potential: SampledPotential,
    samples: Sequence[ScatteringSample],
    modes: Sequence[DiscreteMode],
) -> ParsevalReport:
    """Assemble the n = 0 energy balance; the residual is the verification metric."""
    xis = np.array([s.zeta.real for s in samples])
    steps = np.diff(xis)
    d_xi = float(np.mean(steps))
    if np.max(np.abs(steps - d_xi)) > 1e-9 * max(abs(d_xi), 1.0):
        raise ValueError("scattering samples are not on a uniform spectral grid")
    c0 = c0_time_domain(potential)
    e_cont = continuous_energy(samples, d_xi)
    e_disc = discrete_energy(modes)
    return ParsevalReport(
        c0_time=c0,
        e_continuous=e_cont,
        e_discrete=e_disc,
        residual=abs(c0 - (e_cont + e_disc)),
    )


def order_from_deviations(dev_coarse: float, dev_fine: float, step_ratio: float = 2.0) -> float:
    """Approximation order log_{ratio}(dev_coarse / dev_fine) for embedded grids."""
    if dev_coarse < DEVIATION_FLOOR or dev_fine < DEVIATION_FLOOR:
        raise RoundoffFloorError(
            "roundoff floor: a deviation is at machine-epsilon level, "
            "no meaningful order estimate"
        )
    return math.log(dev_coarse / dev_fine, step_ratio)


def estimate_order(
    resample: Callable[[int], SampledPotential],
    zeta: complex,
    params: SchemeParams,
    coarse_half_steps: int,
    analytic_final: np.ndarray | None = None,
) -> OrderEstimate:
    """Empirical order from grids with coarse_half_steps and twice that.

    resample(M) must produce the same physical potential on a 2M + 1 node
    grid.  analytic_final is the exact state at the right boundary t = L;
    when it is unknown, a third grid (4x) provides a self-referencing
    fallback, flagged in the result.  Deviations are Euclidean 2-norms.
    """
    zeta = complex(zeta)
    coarse = int(coarse_half_steps)
    fine = 2 * coarse

    def boundary_state(m: int) -> np.ndarray:
        potential = resample(m)
        state = propagate(potential, zeta, params)
        dt = state.layer_time - potential.grid.half_width  # tau/2, exact free gap
        scale_growing = cmath.exp(state.log_scale + 1j * zeta * dt)
        scale_decaying = cmath.exp(state.log_scale - 1j * zeta * dt)
        return np.array(
            [complex(state.v[0]) * scale_growing, complex(state.v[1]) * scale_decaying],
            dtype=np.complex128,
        )

    coarse_state = boundary_state(coarse)
    fine_state = boundary_state(fine)

    if analytic_final is not None:
        reference_coarse = reference_fine = np.asarray(analytic_final, dtype=np.complex128)
        used_fallback = False
    else:
        reference_coarse = reference_fine = boundary_state(4 * coarse)
        used_fallback = True

    dev_coarse = float(np.linalg.norm(coarse_state - reference_coarse))
    dev_fine = float(np.linalg.norm(fine_state - reference_fine))
    if dev_coarse < DEVIATION_FLOOR or dev_fine < DEVIATION_FLOOR:
        raise RoundoffFloorError(
            "roundoff floor: deviation at machine-epsilon level for "
            f"zeta = {zeta}, M = {coarse}/{fine}"
        )
    m = order_from_deviations(dev_coarse, dev_fine)
    return OrderEstimate(
        xi=zeta.real,
        m=m,
        coarse_half_steps=coarse,
        fine_half_steps=fine,
        used_fallback=used_fallback,
    )


def min_nodes(xi_max: float, q_max: float, half_width: float) -> int:
    """Sampling bound: smallest M resolving the fastest local oscillation.

    The local frequency never exceeds sqrt(xi^2 + q_max^2); requiring at
    least 4 time steps per oscillation period gives
    M >= 2 L sqrt(xi_max^2 + q_max^2) / pi.
    """
    if half_width <= 0:
        raise ValueError("half_width must be positive")
    return math.ceil(2.0 * half_width * math.hypot(xi_max, q_max) / math.pi)
