"""Quantum speed limit times (QSLT) for Bell-diagonal states.

Two independent computation paths are provided and cross-validated:

* closed-form piecewise expressions, classified by which coefficient
  magnitude dominates the state when the driving leg starts;
* a numeric evaluation of the unified ML/MT bound, assembled from first
  principles: eigenvalues of the leg's initial state, singular values of
  the density-matrix derivative on a quadrature grid, trapezoid time
  averages, and the trace-based distance |tr(rho0 rhoT) - tr(rho0^2)|.

The closed forms are free of the damping rate and of parametric time;
all of that cancels between the distance and the averaged denominator.
Every bound value is reported per unit driving time tau_D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .channels import (ChannelKind, FlipChannel, coeff_derivative_grid,
                       evolve_coeffs, p_of_t)
from .states import (BellCoefficients, CORRELATION_BASIS, InvalidState,
                     is_valid, to_density_matrix)

ML = "ML"
MT = "MT"

CASE_I = "I"
CASE_II = "II"
CASE_III = "III"
CASE_IV = "IV"
CASE_FROZEN = "TimeDependentFrozen"
CASE_DECAYING = "TimeDependentDecaying"
CASE_DEGENERATE = "Degenerate"

# Distances below this are treated as "no evolution required".
DEGENERATE_DISTANCE_TOL = 1e-15


class QuadratureFailure(RuntimeError):
    """Raised when a time average underflows for a non-degenerate leg."""


class DomainError(ValueError):
    """Raised for arguments outside an operation's domain."""


@dataclass(frozen=True)
class QsltResult:
    """A QSLT value with its diagnostics.

    ``distance`` and the two averaged denominators always satisfy
    value == distance * max(1/ml_denominator, 1/mt_denominator) for
    non-degenerate legs.  Numeric results carry the actual leg
    quantities; closed-form results carry them with the common
    integrated-damping factor divided out (the ratio is unchanged, and
    no damping rate is needed to state them).
    """

    value: float
    branch: str
    case_label: str
    distance: float
    ml_denominator: float
    mt_denominator: float


def _role_magnitudes(c: BellCoefficients,
                     channel: FlipChannel) -> tuple[float, float, float]:
    # (a, b, d): the two decaying magnitudes and the preserved one, in the
    # role order that maps each channel onto the phase-flip expressions.
    m1, m2, m3 = c.magnitudes()
    if channel.kind is ChannelKind.PHASE_FLIP:
        return m1, m2, m3
    if channel.kind is ChannelKind.BIT_FLIP:
        return m3, m2, m1
    return m3, m1, m2


def _classify_initial(a: float, b: float, d: float) -> str:
    # First match wins; adjacent case formulas agree on every boundary.
    if d >= a >= b:
        return CASE_I
    if d >= b >= a:
        return CASE_II
    if a >= d and a >= b:
        return CASE_III
    return CASE_IV


def _case_value(a: float, b: float, d: float, u: float,
                tau_d: float) -> tuple[float, float, bool]:
    """Piecewise bound for a leg starting with damping factor u = (1-p)^2.

    Returns (value, averaged-denominator expression, decaying-regime?).
    The expressions are written symmetrically in (a, b) so that swapping
    the two decaying magnitudes reproduces identical floating-point
    results.
    """
    hi = max(a, b)
    lo = min(a, b)
    numer = a * a + b * b
    if d >= u * hi:
        # Preserved coefficient dominates the leg's initial spectrum.
        denom = hi + lo * d
        decaying = True
    else:
        denom = hi * (1.0 + u * lo)
        decaying = False
    return tau_d * u * numer / denom, denom, decaying


def _degenerate_result(distance: float = 0.0) -> QsltResult:
    return QsltResult(value=0.0, branch=ML, case_label=CASE_DEGENERATE,
                      distance=distance, ml_denominator=0.0,
                      mt_denominator=0.0)


def _closed_result(a: float, b: float, d: float, u: float, tau_d: float,
                   label: str) -> QsltResult:
    value, denom, _ = _case_value(a, b, d, u, tau_d)
    numer = a * a + b * b
    distance = 0.25 * u * numer
    ml = denom / (4.0 * tau_d)
    mt = math.sqrt(numer) / (2.0 * tau_d)
    branch = ML if ml <= mt else MT
    return QsltResult(value=value, branch=branch, case_label=label,
                      distance=distance, ml_denominator=ml,
                      mt_denominator=mt)


def bures_like_distance(rho0: np.ndarray, rho_t: np.ndarray) -> float:
    """|tr(rho0 rhoT) - tr(rho0^2)|, the bound's distance functional."""
    overlap = linalg.trace_product(rho0, rho_t).real
    purity = linalg.trace_product(rho0, rho0).real
    return abs(overlap - purity)


def closed_form_initial(c: BellCoefficients, channel: FlipChannel,
                        tau_d: float = 1.0, *,
                        check_state: bool = True) -> QsltResult:
    """Closed-form QSLT for a leg starting from the initial state.

    With (a, b) the decaying magnitudes and d the preserved one:

    * d >= a >= b:      tau_D (a^2 + b^2) / (a + b d)       (case I)
    * d >= b >= a:      tau_D (a^2 + b^2) / (b + a d)       (case II)
    * a >= d, a >= b:   tau_D (a^2 + b^2) / (a (1 + b))     (case III)
    * b >= d, b >= a:   tau_D (a^2 + b^2) / (b (1 + a))     (case IV)

    When both decaying magnitudes vanish the state is stationary and the
    result is 0 with the Degenerate label.  ``check_state=False`` skips
    the tetrahedron test so full-square coefficient sweeps can evaluate
    the formula on unphysical grid points.
    """
    if not tau_d > 0.0:
        raise ValueError(f"tau_d must be > 0, got {tau_d}")
    if check_state and not is_valid(c):
        raise InvalidState(f"not a physical Bell-diagonal state: {c}")
    a, b, d = _role_magnitudes(c, channel)
    if max(a, b) == 0.0:
        return _degenerate_result()
    return _closed_result(a, b, d, 1.0, tau_d, _classify_initial(a, b, d))


def closed_form_from_time(c0: BellCoefficients, channel: FlipChannel,
                          tau: float, tau_d: float = 1.0,
                          gamma: float | None = None) -> QsltResult:
    """Closed-form QSLT for the leg [tau, tau + tau_D].

    The case split of :func:`closed_form_initial` is applied to the
    magnitudes the state has at time tau: with u = (1 - p_tau)^2,

    * frozen regime (u * max(a, b) > d):
      tau_D u (a^2 + b^2) / (max(a,b) (1 + u min(a,b)))
    * decaying regime (d >= u * max(a, b)):
      tau_D u (a^2 + b^2) / (max(a,b) + min(a,b) d)

    The two expressions agree at the regime boundary, so the value is
    continuous in tau; only its slope jumps there.  ``gamma`` defaults
    to the channel's damping rate.
    """
    if not tau >= 0.0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    if tau == 0.0:
        return closed_form_initial(c0, channel, tau_d)
    if not tau_d > 0.0:
        raise ValueError(f"tau_d must be > 0, got {tau_d}")
    if not is_valid(c0):
        raise InvalidState(f"not a physical Bell-diagonal state: {c0}")
    g = channel.gamma if gamma is None else gamma
    a, b, d = _role_magnitudes(c0, channel)
    if max(a, b) == 0.0:
        return _degenerate_result()
    u = math.exp(-2.0 * g * tau)
    _, _, decaying = _case_value(a, b, d, u, tau_d)
    label = CASE_DECAYING if decaying else CASE_FROZEN
    return _closed_result(a, b, d, u, tau_d, label)


def critical_time(c0: BellCoefficients, channel: FlipChannel,
                  gamma: float | None = None) -> float | None:
    """Instant where the dominant decaying magnitude crosses the preserved one.

    Returns ln(max(a, b) / d) / (2 gamma) when max(a, b) > d > 0, and
    None when there is no transition: either d == 0 (the decaying pair
    dominates forever) or d >= max(a, b) (decaying regime from the
    start).
    """
    if not is_valid(c0):
        raise InvalidState(f"not a physical Bell-diagonal state: {c0}")
    g = channel.gamma if gamma is None else gamma
    a, b, d = _role_magnitudes(c0, channel)
    hi = max(a, b)
    if d <= 0.0 or d >= hi:
        return None
    return math.log(hi / d) / (2.0 * g)


def numeric_qslt(c0: BellCoefficients, channel: FlipChannel,
                 tau_start: float = 0.0, tau_d: float = 1.0,
                 gamma: float | None = None, steps: int = 2048) -> QsltResult:
    """Unified ML/MT bound for the leg [tau_start, tau_start + tau_D].

    Everything is evaluated numerically, independent of the closed-form
    case analysis: the leg's initial eigenvalues come from the Jacobi
    eigensolver, the derivative's singular values are computed on a
    uniform grid of ``steps`` intervals, both time averages use the
    composite trapezoid rule (descending-descending pairing in the ML
    sum), and the distance is assembled from matrix traces.  Returns 0
    with the Degenerate label when the distance is below 1e-15.
    """
    if steps < 16:
        raise ValueError(f"steps must be >= 16, got {steps}")
    if not tau_d > 0.0:
        raise ValueError(f"tau_d must be > 0, got {tau_d}")
    if not is_valid(c0):
        raise InvalidState(f"not a physical Bell-diagonal state: {c0}")
    ch = channel if gamma is None else FlipChannel(channel.kind, gamma)

    c_start = evolve_coeffs(c0, ch, p_of_t(tau_start, ch.gamma))
    rho_start = to_density_matrix(c_start)
    varrho = linalg.hermitian_eigenvalues(rho_start)

    ts = tau_start + np.linspace(0.0, tau_d, steps + 1)
    rhodots = np.tensordot(coeff_derivative_grid(c0, ch, ts),
                           CORRELATION_BASIS, axes=1)
    sigma = linalg.singular_values_stack(rhodots)

    dt = tau_d / steps
    ml_avg = float(np.trapezoid(sigma @ varrho, dx=dt)) / tau_d
    mt_avg = float(np.trapezoid(np.sqrt(np.sum(sigma * sigma, axis=1)),
                                dx=dt)) / tau_d

    c_end = evolve_coeffs(c0, ch, p_of_t(tau_start + tau_d, ch.gamma))
    distance = bures_like_distance(rho_start, to_density_matrix(c_end))

    a, b, d = _role_magnitudes(c_start, ch)
    if tau_start == 0.0:
        label = _classify_initial(a, b, d)
    else:
        label = CASE_DECAYING if d >= max(a, b) else CASE_FROZEN

    if distance < DEGENERATE_DISTANCE_TOL:
        return _degenerate_result(distance)
    if ml_avg <= 0.0 or mt_avg <= 0.0:
        raise QuadratureFailure(
            f"time average underflowed (ml={ml_avg}, mt={mt_avg}) "
            f"while distance {distance:.3e} is non-degenerate")
    inv_ml = 1.0 / ml_avg
    inv_mt = 1.0 / mt_avg
    branch = ML if inv_ml >= inv_mt else MT
    return QsltResult(value=distance * max(inv_ml, inv_mt), branch=branch,
                      case_label=label, distance=distance,
                      ml_denominator=ml_avg, mt_denominator=mt_avg)


def werner_qslt(c_mag: float, tau_d: float = 1.0) -> float:
    """QSLT of a Werner state, 2 tau_D / (1 + 1/c), identical under all
    three channels.

    Evaluated through the same piecewise expression as
    :func:`closed_form_initial` with all three magnitudes equal, so the
    two agree bit for bit.
    """
    if not 0.0 < c_mag <= 1.0:
        raise DomainError(f"Werner magnitude must be in (0, 1], got {c_mag}")
    if not tau_d > 0.0:
        raise ValueError(f"tau_d must be > 0, got {tau_d}")
    value, _, _ = _case_value(c_mag, c_mag, c_mag, 1.0, tau_d)
    return value
