"""Scalar numba kernels for 2x2 transfer-matrix propagation.

Everything here works on plain complex scalars so that a single implementation
serves both the public per-interval API and the hot per-node propagation loop.
All kernels are nogil, so spectral sweeps parallelize with ordinary threads.
"""

import cmath
import math

from numba import njit

from .errors import SingularBracketError

# Tolerance below which the implicit fourth-order bracket counts as singular.
BRACKET_DET_FLOOR = 1e-14

# Below this |w| the direct cosh / sinh(w)/w evaluation loses digits to
# cancellation; a 5-term even Taylor series is exact to < 1e-16 there.
SERIES_THRESHOLD = 1e-3


@njit(cache=True, nogil=True)
def hyperbolic_pair(w2):
    """cosh(w) and sinh(w)/w from w^2; series branch keeps the w -> 0 limit exact.

    Both functions are even in w, so only w^2 enters and the branch of the
    square root is irrelevant.  The branch test uses w^2 itself, so the
    square root never sees denormal magnitudes.
    """
    if abs(w2) < SERIES_THRESHOLD * SERIES_THRESHOLD:
        c = 1.0 + w2 / 2.0 * (1.0 + w2 / 12.0 * (1.0 + w2 / 30.0 * (1.0 + w2 / 56.0)))
        s = 1.0 + w2 / 6.0 * (1.0 + w2 / 20.0 * (1.0 + w2 / 42.0 * (1.0 + w2 / 72.0)))
    else:
        w = cmath.sqrt(w2)
        c = cmath.cosh(w)
        s = cmath.sinh(w) / w
    return c, s


@njit(cache=True, nogil=True)
def expm_entries(zeta, q, sigma, tau):
    """Closed-form exp(tau * Q) for Q = [[-i zeta, q], [-sigma conj(q), i zeta]].

    Returns the four entries row-major.  Q is traceless, so
    exp(tau Q) = cosh(w) I + (sinh(w)/w) tau Q with w^2 = -det(tau Q).
    A vanishing q takes the directly rounded free-evolution path: the same
    factor repeats across every free node, so its rounding bias compounds
    linearly and is worth a single-exp evaluation.
    """
    if q == 0.0j:
        phase = cmath.exp(-1j * zeta * tau)
        return (phase, 0.0j, 0.0j, cmath.exp(1j * zeta * tau))
    absq2 = q.real * q.real + q.imag * q.imag
    w2 = -tau * tau * (zeta * zeta + sigma * absq2)
    c, s = hyperbolic_pair(w2)
    diag = s * (-1j) * zeta * tau
    return (c + diag, s * q * tau, -sigma * s * q.conjugate() * tau, c - diag)


@njit(cache=True, nogil=True)
def conjugate_offdiag_entries(zeta, q, sigma, p, r, tau_shift):
    """exp(-tau_shift Q) [[0, p], [r, 0]] exp(tau_shift Q) for the layer matrix Q.

    Used for the potential-difference terms of the fourth-order schemes, where
    the diagonal of the difference cancels exactly.
    """
    f11, f12, f21, f22 = expm_entries(zeta, q, sigma, tau_shift)
    # exp(-tau Q) is the adjugate of exp(tau Q) because det = 1.
    b11, b12, b21, b22 = f22, -f12, -f21, f11
    # B @ [[0, p], [r, 0]] = [[b12*r, b11*p], [b22*r, b21*p]], then right-multiply by F.
    return (
        b12 * r * f11 + b11 * p * f21,
        b12 * r * f12 + b11 * p * f22,
        b22 * r * f11 + b21 * p * f21,
        b22 * r * f12 + b21 * p * f22,
    )


@njit(cache=True, nogil=True)
def family_entries(zeta, q_prev, q_n, q_next, sigma, tau, alpha, beta):
    """One fourth-order transfer matrix over [t_n - tau/2, t_n + tau/2].

    Implicit Cayley-like bracket built from the conjugated neighbor
    differences, sandwiched between half-step exponentials of the frozen
    layer matrix.  alpha = beta = 1/48 gives the unitary conservative member.
    """
    if q_prev == q_n and q_next == q_n:
        # flat stencil: the correction terms vanish identically and the
        # scheme reduces exactly to the one-exponential transfer
        return expm_entries(zeta, q_n, sigma, tau)
    absq2 = q_n.real * q_n.real + q_n.imag * q_n.imag
    w2 = -tau * tau * (zeta * zeta + sigma * absq2)
    c, s = hyperbolic_pair(w2)
    diag = s * (-1j) * zeta * tau
    f11 = c + diag
    f12 = s * q_n * tau
    f21 = -sigma * s * q_n.conjugate() * tau
    f22 = c - diag
    b11, b12, b21, b22 = f22, -f12, -f21, f11

    p_p = q_next - q_n
    r_p = -sigma * p_p.conjugate()
    p_m = q_prev - q_n
    r_m = -sigma * p_m.conjugate()

    # M_plus = exp(-tau Q) dQ_plus exp(tau Q); M_minus = exp(tau Q) dQ_minus exp(-tau Q)
    mp11 = b12 * r_p * f11 + b11 * p_p * f21
    mp12 = b12 * r_p * f12 + b11 * p_p * f22
    mp21 = b22 * r_p * f11 + b21 * p_p * f21
    mp22 = b22 * r_p * f12 + b21 * p_p * f22
    mm11 = f12 * r_m * b11 + f11 * p_m * b21
    mm12 = f12 * r_m * b12 + f11 * p_m * b22
    mm21 = f22 * r_m * b11 + f21 * p_m * b21
    mm22 = f22 * r_m * b12 + f21 * p_m * b22

    gamma = 1.0 / 24.0 - alpha
    delta = 1.0 / 24.0 - beta
    lm11 = 1.0 - tau * (alpha * mp11 + beta * mm11)
    lm12 = -tau * (alpha * mp12 + beta * mm12)
    lm21 = -tau * (alpha * mp21 + beta * mm21)
    lm22 = 1.0 - tau * (alpha * mp22 + beta * mm22)
    rp11 = 1.0 + tau * (gamma * mp11 + delta * mm11)
    rp12 = tau * (gamma * mp12 + delta * mm12)
    rp21 = tau * (gamma * mp21 + delta * mm21)
    rp22 = 1.0 + tau * (gamma * mp22 + delta * mm22)

    det = lm11 * lm22 - lm12 * lm21
    if abs(det) < BRACKET_DET_FLOOR:
        raise SingularBracketError("singular fourth-order bracket: step * |q jump| too large")

    # K = bracket^(-1) @ right-bracket via Cramer's rule
    k11 = (lm22 * rp11 - lm12 * rp21) / det
    k12 = (lm22 * rp12 - lm12 * rp22) / det
    k21 = (-lm21 * rp11 + lm11 * rp21) / det
    k22 = (-lm21 * rp12 + lm11 * rp22) / det

    ch, sh = hyperbolic_pair(w2 / 4.0)
    half = tau / 2.0
    diag_h = sh * (-1j) * zeta * half
    h11 = ch + diag_h
    h12 = sh * q_n * half
    h21 = -sigma * sh * q_n.conjugate() * half
    h22 = ch - diag_h

    # T = H @ K @ H
    a11 = h11 * k11 + h12 * k21
    a12 = h11 * k12 + h12 * k22
    a21 = h21 * k11 + h22 * k21
    a22 = h21 * k12 + h22 * k22
    return (
        a11 * h11 + a12 * h21,
        a11 * h12 + a12 * h22,
        a21 * h11 + a22 * h21,
        a21 * h12 + a22 * h22,
    )


@njit(cache=True, nogil=True)
def propagate_scaled(q, sigma, zeta, tau, t_start, alpha, beta, fourth_order):
    """March the Jost solution across all nodes, one transfer per node.

    Starts from the exact free solution (exp(-i zeta t_start), 0) at the
    half-layer t_start, expressed as a unit-magnitude vector plus a real log
    scale.  Nodes outside the array are ghost nodes with q = 0 (compact
    support).  Returns (v1, v2, log_scale) at t_start + (len(q)) * tau.
    """
    v1 = cmath.exp(-1j * (zeta.real * t_start))
    v2 = 0.0j
    log_scale = zeta.imag * t_start
    n_nodes = q.shape[0]
    for n in range(n_nodes):
        q_n = q[n]
        if fourth_order:
            q_prev = q[n - 1] if n > 0 else 0.0j
            q_next = q[n + 1] if n < n_nodes - 1 else 0.0j
            t11, t12, t21, t22 = family_entries(
                zeta, q_prev, q_n, q_next, sigma, tau, alpha, beta
            )
        else:
            t11, t12, t21, t22 = expm_entries(zeta, q_n, sigma, tau)
        u1 = t11 * v1 + t12 * v2
        u2 = t21 * v1 + t22 * v2
        v1 = u1
        v2 = u2
        # same window as grids.RESCALE_LOWER / RESCALE_UPPER
        m = max(abs(v1), abs(v2))
        if m > 16.0 or (m < 0.0625 and m > 0.0):
            inv = 1.0 / m
            v1 *= inv
            v2 *= inv
            log_scale += math.log(m)
    return v1, v2, log_scale
