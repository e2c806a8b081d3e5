"""Mutual information, classical correlation, and quantum discord.

For Bell-diagonal states all three have closed forms: the mutual
information follows from the Bell-basis populations, and the classical
correlation depends only on chi, the largest coefficient magnitude.
Because those closed forms are standard results rather than something
derivable from this package's own state algebra, a brute-force
measurement-optimization oracle is provided alongside them; agreement
within 1e-4 bits is part of the verification suite.

All entropies are base 2 (bits), with 0 log 0 := 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .states import (BellCoefficients, InvalidState, is_valid, spectrum,
                     to_density_matrix)


@dataclass(frozen=True)
class CorrelationTriple:
    """Correlation measures of one state, all in bits."""

    mutual_info: float
    classical: float
    discord: float
    chi: float


def _xlog2(x: float) -> float:
    return x * math.log2(x) if x > 0.0 else 0.0


def _ensure_valid(c: BellCoefficients) -> None:
    if not is_valid(c):
        raise InvalidState(f"not a physical Bell-diagonal state: {c}")


def mutual_information(c: BellCoefficients) -> float:
    """Total correlations I = 2 + sum_k lambda_k log2 lambda_k."""
    _ensure_valid(c)
    return 2.0 + sum(_xlog2(v) for v in spectrum(c).as_array())


def classical_correlation(c: BellCoefficients) -> float:
    """Measurement-optimized classical correlation.

    CC = sum_{k=1,2} ((1 + (-1)^k chi)/2) log2(1 + (-1)^k chi), with
    chi the largest coefficient magnitude; equals 1 at chi = 1 and 0 at
    chi = 0.
    """
    _ensure_valid(c)
    chi = max(c.magnitudes())
    return (_xlog2(1.0 - chi) + _xlog2(1.0 + chi)) / 2.0


def quantum_discord(c: BellCoefficients) -> float:
    """Quantum correlations: mutual information minus classical correlation."""
    return mutual_information(c) - classical_correlation(c)


def correlation_triple(c: BellCoefficients) -> CorrelationTriple:
    """All three measures plus chi, evaluated once."""
    mutual = mutual_information(c)
    classical = classical_correlation(c)
    return CorrelationTriple(mutual_info=mutual, classical=classical,
                             discord=mutual - classical,
                             chi=max(c.magnitudes()))


# ---------------------------------------------------------------------------
# Measurement-optimization oracle
# ---------------------------------------------------------------------------

def _reduced_a(rho: np.ndarray) -> np.ndarray:
    return np.einsum("abcb->ac", rho.reshape(2, 2, 2, 2))


def _reduced_b(rho: np.ndarray) -> np.ndarray:
    return np.einsum("abac->bc", rho.reshape(2, 2, 2, 2))


def _entropy_2x2(rho: np.ndarray) -> float:
    # Closed-form eigenvalues of a 2x2 Hermitian matrix.
    mean = (rho[0, 0].real + rho[1, 1].real) / 2.0
    half_gap = (rho[0, 0].real - rho[1, 1].real) / 2.0
    radius = math.sqrt(half_gap * half_gap + abs(rho[0, 1]) ** 2)
    return -(_xlog2(mean + radius) + _xlog2(mean - radius))


def _entropy_4x4(rho: np.ndarray) -> float:
    return -sum(_xlog2(v) for v in linalg.hermitian_eigenvalues(rho))


def _bloch_directions(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    # All (theta, phi) combinations, theta as the outer axis; shape (m, 3).
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    n = np.stack([np.sin(tt) * np.cos(pp),
                  np.sin(tt) * np.sin(pp),
                  np.cos(tt)], axis=-1)
    return n.reshape(-1, 3)


def _projector_stack(n: np.ndarray, sign: float) -> np.ndarray:
    # (I + sign * n.sigma)/2 for every direction in the (m, 3) input.
    m = n.shape[0]
    proj = np.empty((m, 2, 2), dtype=complex)
    proj[:, 0, 0] = (1.0 + sign * n[:, 2]) / 2.0
    proj[:, 1, 1] = (1.0 - sign * n[:, 2]) / 2.0
    proj[:, 0, 1] = sign * (n[:, 0] - 1j * n[:, 1]) / 2.0
    proj[:, 1, 0] = sign * (n[:, 0] + 1j * n[:, 1]) / 2.0
    return proj


def _conditional_entropy_terms(rho: np.ndarray,
                               proj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Measure subsystem B with the (m, 2, 2) projector stack: returns the
    # outcome probabilities and the entropies of the conditional A states.
    m = proj.shape[0]
    full = np.zeros((m, 4, 4), dtype=complex)
    full[:, 0:2, 0:2] = proj
    full[:, 2:4, 2:4] = proj
    sandwich = full @ rho @ full
    probs = np.real(np.einsum("mii->m", sandwich))
    cond_a = np.einsum("mabcb->mac", sandwich.reshape(m, 2, 2, 2, 2))
    safe = np.where(probs > 1e-15, probs, 1.0)
    top = np.real(cond_a[:, 0, 0]) / safe
    bottom = np.real(cond_a[:, 1, 1]) / safe
    off = np.abs(cond_a[:, 0, 1]) / safe
    mean = (top + bottom) / 2.0
    radius = np.sqrt(((top - bottom) / 2.0) ** 2 + off * off)
    lam_hi = np.clip(mean + radius, 0.0, None)
    lam_lo = np.clip(mean - radius, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        entropy = -(np.where(lam_hi > 0, lam_hi * np.log2(lam_hi), 0.0)
                    + np.where(lam_lo > 0, lam_lo * np.log2(lam_lo), 0.0))
    entropy = np.where(probs > 1e-15, entropy, 0.0)
    return probs, entropy


def _measured_classical(rho: np.ndarray, s_a: float,
                        n: np.ndarray) -> np.ndarray:
    p_plus, h_plus = _conditional_entropy_terms(rho, _projector_stack(n, 1.0))
    p_minus, h_minus = _conditional_entropy_terms(rho, _projector_stack(n, -1.0))
    return s_a - (p_plus * h_plus + p_minus * h_minus)


def _golden_max(f, lo: float, hi: float, tol: float = 1e-10) -> tuple[float, float]:
    # Golden-section maximization of a scalar function on [lo, hi].
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = f(x1)
    mid = (a + b) / 2.0
    return mid, max(f1, f2, float(f(mid)))


def discord_oracle(c: BellCoefficients, theta_steps: int = 64,
                   phi_steps: int = 128) -> float:
    """Discord from brute-force optimization over projective measurements.

    Maximizes the classical-correlation functional over measurements
    {(I +- n.sigma)/2} on subsystem B, with n scanned on a
    (theta_steps x phi_steps) grid over theta in [0, pi], phi in [0, pi)
    (antipodal directions give the same measurement) followed by one
    golden-section refinement per axis around the best grid point.  The
    mutual information is assembled from subsystem entropies, so the
    whole path is independent of the coefficient-based closed forms.
    """
    if theta_steps < 64:
        raise ValueError(f"theta_steps must be >= 64, got {theta_steps}")
    if phi_steps < 128:
        raise ValueError(f"phi_steps must be >= 128, got {phi_steps}")
    _ensure_valid(c)

    rho = to_density_matrix(c)
    s_a = _entropy_2x2(_reduced_a(rho))
    s_b = _entropy_2x2(_reduced_b(rho))
    mutual = s_a + s_b - _entropy_4x4(rho)

    thetas = np.linspace(0.0, math.pi, theta_steps)
    phis = np.linspace(0.0, math.pi, phi_steps, endpoint=False)
    values = _measured_classical(rho, s_a, _bloch_directions(thetas, phis))
    best = int(np.argmax(values))  # first maximum: smallest theta, then phi
    best_cc = float(values[best])
    theta0 = thetas[best // phi_steps]
    phi0 = phis[best % phi_steps]

    def cc_at(theta: float, phi: float) -> float:
        n = np.array([[math.sin(theta) * math.cos(phi),
                       math.sin(theta) * math.sin(phi),
                       math.cos(theta)]])
        return float(_measured_classical(rho, s_a, n)[0])

    d_theta = math.pi / (theta_steps - 1)
    lo = max(0.0, theta0 - d_theta)
    hi = min(math.pi, theta0 + d_theta)
    theta1, cc_theta = _golden_max(lambda t: cc_at(t, phi0), lo, hi)
    best_cc = max(best_cc, cc_theta)

    d_phi = math.pi / phi_steps
    _, cc_phi = _golden_max(lambda p: cc_at(theta1, p),
                            phi0 - d_phi, phi0 + d_phi)
    best_cc = max(best_cc, cc_phi)

    return mutual - best_cc
