"""Analytic reference potentials with known spectral data, for tests and experiments."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels
from .grids import SampledPotential, UniformGrid

_EIGEN_MATCH_TOL = 1e-12


@dataclass(frozen=True)
class ReferencePotential:
    """Closed-form potential plus its exact scattering data.

    analytic_a is valid on the real axis and (for the reflectionless shapes)
    in the upper half-plane.  b values are tabulated at the eigenvalues;
    analytic_b covers the real axis.  resample() realizes the same physical
    potential on a grid of any resolution, which is what embedded-grid order
    runs need.
    """

    name: str
    half_width: float
    q_func: Callable[[np.ndarray], np.ndarray]
    analytic_a: Callable[[complex], complex]
    analytic_b: Callable[[complex], complex]
    eigenvalues: tuple = ()
    b_at_eigenvalues: tuple = ()
    sigma: int = 1
    label: str = field(default="")

    def resample(self, half_steps: int) -> SampledPotential:
        grid = UniformGrid(half_width=self.half_width, half_steps=int(half_steps))
        samples = np.asarray(self.q_func(grid.nodes), dtype=np.complex128)
        return SampledPotential(grid=grid, samples=samples, sigma=self.sigma)

    def eigenvalue_b(self, zeta: complex) -> complex | None:
        for ev, b in zip(self.eigenvalues, self.b_at_eigenvalues):
            if abs(complex(zeta) - ev) <= _EIGEN_MATCH_TOL:
                return b
        return None

    def final_state(self, zeta: complex) -> np.ndarray:
        """Exact Jost solution at the right boundary t = L.

        Beyond the support the solution is a(zeta) (1,0) e^{-i zeta t}
        + b(zeta) (0,1) e^{+i zeta t} exactly.  Known for real zeta and at
        the tabulated eigenvalues; b is not analytic elsewhere.
        """
        zeta = complex(zeta)
        t = self.half_width
        b_eig = self.eigenvalue_b(zeta)
        if b_eig is not None:
            a, b = self.analytic_a(zeta), b_eig
        elif zeta.imag == 0.0:
            a, b = self.analytic_a(zeta), self.analytic_b(zeta)
        else:
            raise ValueError(
                "exact final state known only for real zeta or at tabulated eigenvalues"
            )
        return np.array(
            [a * cmath.exp(-1j * zeta * t), b * cmath.exp(1j * zeta * t)], dtype=np.complex128
        )


def _sech_family(amplitude: int, half_width: float) -> ReferencePotential:
    """A * sech(t): reflectionless with eigenvalues (A - k + 1/2) i, k = 1..A.

    b at the eigenvalue of rank k (counting down from the largest) is
    (-1)^k; a(zeta) is the Blaschke product over the eigenvalues.
    """
    eigen_desc = [(amplitude - k + 0.5) * 1j for k in range(1, amplitude + 1)]
    b_desc = [(-1.0) ** k + 0.0j for k in range(1, amplitude + 1)]
    # ascending by imaginary part, as reported
    eigenvalues = tuple(reversed(eigen_desc))
    b_values = tuple(reversed(b_desc))

    def analytic_a(zeta: complex) -> complex:
        value = 1.0 + 0.0j
        for ev in eigenvalues:
            value *= (zeta - ev) / (zeta - ev.conjugate())
        return value

    return ReferencePotential(
        name="sech" if amplitude == 1 else "satsuma_yajima",
        half_width=half_width,
        q_func=lambda t: amplitude / np.cosh(t) + 0.0j,
        analytic_a=analytic_a,
        analytic_b=lambda zeta: 0.0j,
        eigenvalues=eigenvalues,
        b_at_eigenvalues=b_values,
        label=f"{amplitude}*sech(t)",
    )


def _rectangle(amplitude: complex, edges: tuple[float, float], grid: UniformGrid) -> ReferencePotential:
    """Constant q = A on [t1, t2], zero elsewhere, edges snapped to grid nodes.

    Sampling uses the left limit at the snapped edge nodes, so the effective
    piecewise-constant support has exactly the snapped width (shifted by half
    a step, which a(zeta) cannot see).  The closed form comes from a single
    constant-coefficient transfer matrix over that support.  A rectangle has
    a first-kind discontinuity, so it serves as a correctness oracle, not an
    order test.
    """
    t1, t2 = float(edges[0]), float(edges[1])
    if not (-grid.half_width <= t1 < t2 <= grid.half_width):
        raise ValueError("rectangle edges must satisfy -L <= t1 < t2 <= L")
    tau = grid.step
    n1 = round((t1 + grid.half_width) / tau)
    n2 = round((t2 + grid.half_width) / tau)
    if n2 <= n1:
        raise ValueError("rectangle narrower than one grid step after snapping")
    snapped1, snapped2 = grid.node(n1), grid.node(n2)
    width = (n2 - n1) * tau
    amplitude = complex(amplitude)
    # effective support after the left-limit sampling rule: [t1 + tau/2, t2 + tau/2]
    center_phase = snapped1 + snapped2 + tau

    def q_func(t: np.ndarray) -> np.ndarray:
        return np.where((t > snapped1) & (t <= snapped2), amplitude, 0.0j)

    def analytic_a(zeta: complex) -> complex:
        e11, _, _, _ = _kernels.expm_entries(complex(zeta), amplitude, 1, width)
        return e11 * cmath.exp(1j * zeta * width)

    def analytic_b(zeta: complex) -> complex:
        _, _, e21, _ = _kernels.expm_entries(complex(zeta), amplitude, 1, width)
        return e21 * cmath.exp(-1j * zeta * center_phase)

    return ReferencePotential(
        name="rectangle",
        half_width=grid.half_width,
        q_func=q_func,
        analytic_a=analytic_a,
        analytic_b=analytic_b,
        label=f"rectangle A={amplitude} on [{snapped1}, {snapped2}]",
    )


def make_reference(
    name: str,
    grid: UniformGrid,
    amplitude: float | complex | None = None,
    edges: tuple[float, float] = (-1.0, 1.0),
) -> tuple[SampledPotential, ReferencePotential]:
    """Sampled potential plus exact spectral data for one of the built-in shapes.

    Shapes: "sech" (single eigenvalue 0.5i with b = -1), "satsuma_yajima"
    (integer amplitude A >= 1, eigenvalues (A - k + 1/2) i), "rectangle"
    (constant amplitude between snapped edges) and "zero" (a = 1, b = 0).
    """
    if name == "zero":
        reference = ReferencePotential(
            name="zero",
            half_width=grid.half_width,
            q_func=lambda t: np.zeros_like(t, dtype=np.complex128),
            analytic_a=lambda zeta: 1.0 + 0.0j,
            analytic_b=lambda zeta: 0.0j,
            label="zero signal",
        )
    elif name == "sech":
        reference = _sech_family(1, grid.half_width)
    elif name == "satsuma_yajima":
        a = 2 if amplitude is None else amplitude
        if a != int(a) or int(a) < 1:
            raise ValueError(f"satsuma_yajima amplitude must be an integer >= 1, got {amplitude!r}")
        reference = _sech_family(int(a), grid.half_width)
    elif name == "rectangle":
        reference = _rectangle(1.0 if amplitude is None else amplitude, edges, grid)
    else:
        raise ValueError(f"unknown reference potential {name!r}")
    return reference.resample(grid.half_steps), reference
