"""Discrete spectrum: a(zeta) in the upper half-plane, Newton refinement, norming constants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import EigenvalueSearchError
from .grids import SampledPotential, SchemeParams
from .propagators import propagate
from .scattering import extract_ab

DEFAULT_H_SCALE = 1e-5
NEWTON_TOL_A = 1e-10
NEWTON_TOL_STEP = 1e-12
NEWTON_MAX_ITER = 50
_APRIME_FLOOR = 1e-14


@dataclass(frozen=True)
class DiscreteMode:
    """Converged eigenvalue with the residual a, b, a' and norming constant.

    norming = b / a_prime exactly as stored.
    """

    zeta: complex
    a_at: complex
    b: complex
    a_prime: complex
    norming: complex
    iterations: int = 0


def a_of_zeta(potential: SampledPotential, zeta: complex, params: SchemeParams) -> complex:
    """a(zeta) for Im(zeta) > 0; zeros of this map are the eigenvalues."""
    zeta = complex(zeta)
    if zeta.imag <= 0:
        raise ValueError("discrete-spectrum evaluation needs Im(zeta) > 0")
    return extract_ab(propagate(potential, zeta, params), zeta).a


def _central_difference(f: Callable[[complex], complex], zeta: complex, h: float,
                        richardson: bool) -> complex:
    d = (f(zeta + h) - f(zeta - h)) / (2.0 * h)
    if not richardson:
        return d
    d_half = (f(zeta + h / 2.0) - f(zeta - h / 2.0)) / h
    return (4.0 * d_half - d) / 3.0


def a_prime(
    potential: SampledPotential,
    zeta: complex,
    params: SchemeParams,
    h: float | None = None,
    richardson: bool = False,
) -> complex:
    """da/dzeta by central difference; a is analytic so a real step suffices.

    Default step 1e-5 * max(1, |zeta|); optionally one Richardson
    extrapolation halving h.
    """
    zeta = complex(zeta)
    if h is None:
        h = DEFAULT_H_SCALE * max(1.0, abs(zeta))
    if h <= 0 or h >= zeta.imag:
        raise ValueError("need 0 < h < Im(zeta): stencil must stay in the upper half-plane")
    return _central_difference(lambda z: a_of_zeta(potential, z, params), zeta, h, richardson)


def refine_eigenvalue(
    potential: SampledPotential,
    zeta0: complex,
    params: SchemeParams,
    tol_a: float = NEWTON_TOL_A,
    tol_step: float = NEWTON_TOL_STEP,
    max_iter: int = NEWTON_MAX_ITER,
) -> DiscreteMode:
    """Newton iteration zeta <- zeta - a/a' from a user-supplied start.

    Stops once |a| < tol_a or the Newton step falls below tol_step; raises
    EigenvalueSearchError on divergence (iterate leaves the upper half-plane
    or the iteration cap is hit) and on a degenerate a' ~ 0.  Tolerances sit
    below the scheme discretization error at desk-scale grids, so reported
    errors are dominated by the scheme, not the root finder.
    """
    zeta = complex(zeta0)
    if zeta.imag <= 0:
        raise ValueError("starting point must lie in the upper half-plane")

    for iteration in range(1, max_iter + 1):
        a = a_of_zeta(potential, zeta, params)
        da = a_prime(potential, zeta, params)
        if abs(a) < tol_a:
            return _finish(potential, zeta, params, a, da, iteration)
        if abs(da) < _APRIME_FLOOR:
            raise EigenvalueSearchError(
                f"a'({zeta}) ~ 0: degenerate or double zero, cannot take a Newton step"
            )
        step = a / da
        zeta_next = zeta - step
        if zeta_next.imag <= 0:
            raise EigenvalueSearchError(
                f"iterate left the upper half-plane at iteration {iteration} (from {zeta})"
            )
        zeta = zeta_next
        if abs(step) < tol_step:
            a = a_of_zeta(potential, zeta, params)
            da = a_prime(potential, zeta, params)
            return _finish(potential, zeta, params, a, da, iteration)

    raise EigenvalueSearchError(f"no convergence within {max_iter} iterations (last zeta {zeta})")


def _finish(potential, zeta, params, a, da, iterations) -> DiscreteMode:
    if abs(da) < _APRIME_FLOOR:
        raise EigenvalueSearchError(f"a'({zeta}) ~ 0 at the converged point")
    b = extract_ab(propagate(potential, zeta, params), zeta).b
    return DiscreteMode(
        zeta=zeta, a_at=a, b=b, a_prime=da, norming=b / da, iterations=iterations
    )
