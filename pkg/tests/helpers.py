"""Independent oracles used across the test suite.

Everything here deliberately avoids the production code paths: the matrix
exponential is summed as a power series, and full scattering runs go through
scipy's adaptive ODE integrator on the analytic potential.
"""

import numpy as np


def series_expm(matrix: np.ndarray, terms: int = 30) -> np.ndarray:
    """Plain power-series matrix exponential (scaling-free; use small norms)."""
    out = np.eye(2, dtype=complex)
    term = np.eye(2, dtype=complex)
    for k in range(1, terms):
        term = term @ matrix / k
        out = out + term
    return out


def ode_scattering(q_func, half_width: float, zeta: complex, sigma: int = 1,
                   rtol: float = 1e-11, atol: float = 1e-12):
    """(a, b) from scipy's DOP853 on the continuous problem; independent of the schemes."""
    from scipy.integrate import solve_ivp

    zeta = complex(zeta)
    L = float(half_width)

    def rhs(t, y):
        psi1 = y[0] + 1j * y[1]
        psi2 = y[2] + 1j * y[3]
        q = q_func(t)
        d1 = -1j * zeta * psi1 + q * psi2
        d2 = -sigma * np.conj(q) * psi1 + 1j * zeta * psi2
        return [d1.real, d1.imag, d2.real, d2.imag]

    psi0 = np.exp(-1j * zeta * (-L))
    sol = solve_ivp(rhs, (-L, L), [psi0.real, psi0.imag, 0.0, 0.0],
                    method="DOP853", rtol=rtol, atol=atol)
    psi1 = sol.y[0, -1] + 1j * sol.y[1, -1]
    psi2 = sol.y[2, -1] + 1j * sol.y[3, -1]
    a = psi1 * np.exp(1j * zeta * L)
    b = psi2 * np.exp(-1j * zeta * L)
    return a, b


def fit_slope(x, y) -> float:
    """Least-squares slope of y against x."""
    return float(np.polyfit(np.asarray(x, dtype=float), np.asarray(y, dtype=float), 1)[0])
