"""Non-dissipative flip channels acting locally on both qubits.

Each channel flips one Pauli axis with probability p/2 per qubit, where
p = 1 - exp(-gamma t) plays the role of parametric time.  Acting with
equal strength on both qubits of a Bell-diagonal state, the two
coefficients off the flip axis are damped by (1 - p)^2 while the
coefficient on the preserved axis never moves:

* phase flip (sigma_z): preserves c3, damps c1 and c2;
* bit flip (sigma_x): preserves c1, damps c2 and c3;
* bit-phase flip (sigma_y): preserves c2, damps c1 and c3.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .states import BellCoefficients, IDENTITY_2, PAULI_X, PAULI_Y, PAULI_Z


class NegativeTime(ValueError):
    """Raised for a negative evolution time."""


class ChannelKind(enum.Enum):
    PHASE_FLIP = "phase-flip"
    BIT_FLIP = "bit-flip"
    BIT_PHASE_FLIP = "bit-phase-flip"


# Pauli operator applied by each channel and the coefficient index it leaves
# untouched (0-based index into (c1, c2, c3)).
_FLIP_OPERATOR = {
    ChannelKind.PHASE_FLIP: PAULI_Z,
    ChannelKind.BIT_FLIP: PAULI_X,
    ChannelKind.BIT_PHASE_FLIP: PAULI_Y,
}
_PRESERVED_AXIS = {
    ChannelKind.PHASE_FLIP: 2,
    ChannelKind.BIT_FLIP: 0,
    ChannelKind.BIT_PHASE_FLIP: 1,
}


@dataclass(frozen=True)
class FlipChannel:
    """A flip channel kind together with its damping rate gamma (1/time)."""

    kind: ChannelKind
    gamma: float = 1.0

    def __post_init__(self):
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")

    @property
    def preserved_axis(self) -> int:
        return _PRESERVED_AXIS[self.kind]

    @property
    def decaying_axes(self) -> tuple[int, int]:
        return tuple(i for i in range(3) if i != self.preserved_axis)


def p_of_t(t: float, gamma: float) -> float:
    """Parametric time p = 1 - exp(-gamma t), clamped into [0, 1).

    The clamp below 1 avoids exact-p=1 degeneracies for t -> infinity.
    """
    if t < 0.0:
        raise NegativeTime(f"time must be >= 0, got {t}")
    p = 1.0 - math.exp(-gamma * t)
    return min(p, 1.0 - 1e-15)


def evolve_coeffs(c: BellCoefficients, channel: FlipChannel,
                  p: float) -> BellCoefficients:
    """Damp the two non-preserved coefficients by (1 - p)^2."""
    factor = (1.0 - p) ** 2
    values = [c.c1, c.c2, c.c3]
    for axis in channel.decaying_axes:
        values[axis] = factor * values[axis]
    return BellCoefficients(*values)


def kraus_operators(channel: FlipChannel, p: float) -> list[np.ndarray]:
    """The four two-qubit products K_i^A K_j^B as 4x4 matrices.

    Per qubit, K0 = sqrt(1 - p/2) I and K1 = sqrt(p/2) sigma_k with
    sigma_k the channel's flip operator.  Ordered (i, j) in
    (0,0), (0,1), (1,0), (1,1); the completeness sum of K^dag K is the
    identity for every p in [0, 1].
    """
    sigma = _FLIP_OPERATOR[channel.kind]
    k0 = math.sqrt(1.0 - p / 2.0) * IDENTITY_2
    k1 = math.sqrt(p / 2.0) * sigma
    ops = []
    for ka in (k0, k1):
        for kb in (k0, k1):
            ops.append(np.kron(ka, IDENTITY_2) @ np.kron(IDENTITY_2, kb))
    return ops


def apply_kraus(rho: np.ndarray, channel: FlipChannel, p: float) -> np.ndarray:
    """Operator-sum action: sum_k K_k rho K_k^dag over the four products."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for k in kraus_operators(channel, p):
        out += k @ rho @ k.conj().T
    return out


def coeff_derivative(c: BellCoefficients, channel: FlipChannel,
                     t: float) -> np.ndarray:
    """d/dt of the evolved triple at time t, as an array of three rates.

    The non-preserved coefficients obey d/dt [(1-p)^2 c_i]
    = -2 gamma exp(-2 gamma t) c_i; the preserved one is constant.
    """
    if t < 0.0:
        raise NegativeTime(f"time must be >= 0, got {t}")
    rate = -2.0 * channel.gamma * math.exp(-2.0 * channel.gamma * t)
    values = [c.c1, c.c2, c.c3]
    out = np.zeros(3)
    for axis in channel.decaying_axes:
        out[axis] = rate * values[axis]
    return out


def coeff_derivative_grid(c: BellCoefficients, channel: FlipChannel,
                          ts: np.ndarray) -> np.ndarray:
    """Vectorized :func:`coeff_derivative` over a time grid.

    Returns an (n, 3) array; row k equals coeff_derivative(c, channel,
    ts[k]) exactly (same arithmetic, evaluated with array ops).
    """
    ts = np.asarray(ts, dtype=float)
    if np.any(ts < 0.0):
        raise NegativeTime("time grid contains negative entries")
    rate = -2.0 * channel.gamma * np.exp(-2.0 * channel.gamma * ts)
    values = [c.c1, c.c2, c.c3]
    out = np.zeros((ts.size, 3))
    for axis in channel.decaying_axes:
        out[:, axis] = rate * values[axis]
    return out
