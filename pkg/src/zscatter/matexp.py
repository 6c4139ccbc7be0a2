"""Closed-form exponential of the traceless 2x2 layer matrix.

For Q = [[-i zeta, q], [-sigma conj(q), i zeta]] the exponential is
exp(tau Q) = cosh(w) I + (sinh(w)/w) tau Q with w^2 = -det(tau Q).  Both
cosh and sinh(w)/w are even functions, so either branch of the square root
yields the same matrix.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import _kernels

OFFDIAG_TOL = 1e-14


@dataclass(frozen=True)
class ZsMatrix:
    """Layer matrix of the scattering system, determined by (zeta, q, sigma)."""

    zeta: complex
    q: complex
    sigma: int = 1

    def __post_init__(self):
        zeta = complex(self.zeta)
        q = complex(self.q)
        if not (cmath.isfinite(zeta) and cmath.isfinite(q)):
            raise ValueError("zeta and q must be finite")
        if self.sigma not in (1, -1):
            raise ValueError(f"sigma must be +1 or -1, got {self.sigma!r}")
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "sigma", int(self.sigma))

    def as_array(self) -> np.ndarray:
        return np.array(
            [[-1j * self.zeta, self.q], [-self.sigma * self.q.conjugate(), 1j * self.zeta]],
            dtype=np.complex128,
        )

    def det(self) -> complex:
        return self.zeta * self.zeta + self.sigma * abs(self.q) ** 2


def expm(matrix: ZsMatrix, tau: float) -> np.ndarray:
    """exp(tau * Q) as a 2x2 complex array; tau may be negative."""
    tau = float(tau)
    if not np.isfinite(tau):
        raise ValueError("tau must be finite")
    e11, e12, e21, e22 = _kernels.expm_entries(matrix.zeta, matrix.q, matrix.sigma, tau)
    return np.array([[e11, e12], [e21, e22]], dtype=np.complex128)


def conjugate_offdiag(matrix: ZsMatrix, delta_q: np.ndarray, tau_shift: float) -> np.ndarray:
    """exp(-tau_shift Q) @ delta_q @ exp(tau_shift Q) for a zero-diagonal delta_q.

    delta_q is the difference of two layer matrices sharing zeta, so its
    diagonal cancels exactly; entries above OFFDIAG_TOL are rejected.
    """
    dq = np.asarray(delta_q, dtype=np.complex128)
    if dq.shape != (2, 2):
        raise ValueError("delta_q must be a 2x2 matrix")
    if max(abs(dq[0, 0]), abs(dq[1, 1])) > OFFDIAG_TOL:
        raise ValueError("delta_q must have an exactly zero diagonal")
    m11, m12, m21, m22 = _kernels.conjugate_offdiag_entries(
        matrix.zeta, matrix.q, matrix.sigma, dq[0, 1], dq[1, 0], float(tau_shift)
    )
    return np.array([[m11, m12], [m21, m22]], dtype=np.complex128)
