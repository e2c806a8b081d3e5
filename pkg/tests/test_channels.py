"""Tests for the flip channels."""

import math

import numpy as np
import pytest

from bellqsl.channels import (ChannelKind, FlipChannel, NegativeTime,
                              apply_kraus, coeff_derivative,
                              coeff_derivative_grid, evolve_coeffs,
                              kraus_operators, p_of_t)
from bellqsl.states import (BellCoefficients, from_density_matrix,
                            random_valid_coefficients, to_density_matrix)

ALL_KINDS = list(ChannelKind)


def test_p_of_t_at_zero():
    assert p_of_t(0.0, 1.0) == 0.0


def test_p_of_t_half_life():
    assert p_of_t(math.log(2.0), 1.0) == pytest.approx(0.5, abs=1e-15)


def test_p_of_t_direct_exponential():
    assert p_of_t(0.5, 2.0) == pytest.approx(1.0 - math.exp(-1.0), abs=1e-15)


def test_p_of_t_rejects_negative_time():
    with pytest.raises(NegativeTime):
        p_of_t(-0.1, 1.0)


def test_p_of_t_stays_below_one():
    assert p_of_t(1e9, 10.0) < 1.0


def test_p_of_t_monotone():
    ts = np.linspace(0.0, 5.0, 200)
    ps = [p_of_t(float(t), 0.7) for t in ts]
    assert all(b > a for a, b in zip(ps, ps[1:]))


def test_gamma_must_be_positive():
    with pytest.raises(ValueError):
        FlipChannel(ChannelKind.PHASE_FLIP, gamma=0.0)


def test_evolve_identity_at_p_zero():
    c = BellCoefficients(0.8, -0.4, 0.6)
    for kind in ALL_KINDS:
        assert evolve_coeffs(c, FlipChannel(kind), 0.0) == c


def test_evolve_phase_flip():
    c = evolve_coeffs(BellCoefficients(0.8, -0.4, 0.6),
                      FlipChannel(ChannelKind.PHASE_FLIP), 0.5)
    np.testing.assert_allclose(c.as_array(), [0.2, -0.1, 0.6], atol=1e-15)


def test_evolve_bit_flip():
    c = evolve_coeffs(BellCoefficients(0.8, -0.4, 0.6),
                      FlipChannel(ChannelKind.BIT_FLIP), 0.5)
    np.testing.assert_allclose(c.as_array(), [0.8, -0.1, 0.15], atol=1e-15)


def test_evolve_bit_phase_flip_preserves_c2():
    c = evolve_coeffs(BellCoefficients(0.8, -0.4, 0.6),
                      FlipChannel(ChannelKind.BIT_PHASE_FLIP), 0.5)
    np.testing.assert_allclose(c.as_array(), [0.2, -0.4, 0.15], atol=1e-15)


def test_evolution_composes_over_time():
    rng = np.random.default_rng(30)
    for kind in ALL_KINDS:
        channel = FlipChannel(kind, gamma=0.9)
        for _ in range(50):
            c = random_valid_coefficients(rng)
            t1, t2 = rng.uniform(0.0, 2.0, size=2)
            two_step = evolve_coeffs(
                evolve_coeffs(c, channel, p_of_t(t1, channel.gamma)),
                channel, p_of_t(t2, channel.gamma))
            one_step = evolve_coeffs(c, channel,
                                     p_of_t(t1 + t2, channel.gamma))
            np.testing.assert_allclose(two_step.as_array(),
                                       one_step.as_array(), atol=1e-12)


def test_kraus_at_p_zero_is_identity_only():
    for kind in ALL_KINDS:
        ops = kraus_operators(FlipChannel(kind), 0.0)
        np.testing.assert_allclose(ops[0], np.eye(4), atol=0)
        for op in ops[1:]:
            np.testing.assert_allclose(op, 0.0, atol=0)


def test_phase_flip_kraus_are_diagonal():
    ops = kraus_operators(FlipChannel(ChannelKind.PHASE_FLIP), 0.37)
    for op in ops:
        np.testing.assert_array_equal(op - np.diag(np.diag(op)), 0.0)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_kraus_completeness(kind):
    ops = kraus_operators(FlipChannel(kind), 0.37)
    total = sum(op.conj().T @ op for op in ops)
    np.testing.assert_allclose(total, np.eye(4), atol=1e-12)


def test_apply_kraus_identity_at_p_zero():
    rho = to_density_matrix(BellCoefficients(0.3, 0.2, 0.4))
    for kind in ALL_KINDS:
        np.testing.assert_allclose(apply_kraus(rho, FlipChannel(kind), 0.0),
                                   rho, atol=1e-15)


def test_apply_kraus_full_phase_flip_kills_transverse_coefficients():
    rho = to_density_matrix(BellCoefficients(0.8, 0.6, 0.2))
    evolved = apply_kraus(rho, FlipChannel(ChannelKind.PHASE_FLIP), 1.0)
    np.testing.assert_allclose(
        evolved, to_density_matrix(BellCoefficients(0.0, 0.0, 0.2)),
        atol=1e-12)


def test_apply_kraus_matches_coefficient_path():
    rng = np.random.default_rng(31)
    for kind in ALL_KINDS:
        channel = FlipChannel(kind)
        for _ in range(100):
            c = random_valid_coefficients(rng)
            p = float(rng.uniform(0.0, 1.0))
            direct = apply_kraus(to_density_matrix(c), channel, p)
            closed = to_density_matrix(evolve_coeffs(c, channel, p))
            assert float(np.max(np.abs(direct - closed))) <= 1e-12


def test_apply_kraus_preserves_trace_and_hermiticity():
    rng = np.random.default_rng(32)
    for kind in ALL_KINDS:
        channel = FlipChannel(kind)
        for _ in range(50):
            rho = to_density_matrix(random_valid_coefficients(rng))
            out = apply_kraus(rho, channel, float(rng.uniform(0.0, 1.0)))
            assert abs(np.trace(out).real - 1.0) < 1e-12
            assert float(np.max(np.abs(out - out.conj().T))) < 1e-12


def test_evolution_stays_bell_diagonal():
    rng = np.random.default_rng(33)
    for kind in ALL_KINDS:
        channel = FlipChannel(kind)
        for _ in range(50):
            c = random_valid_coefficients(rng)
            evolved = apply_kraus(to_density_matrix(c), channel,
                                  float(rng.uniform(0.0, 1.0)))
            from_density_matrix(evolved)  # must not raise


def _swapped(c, i, j):
    values = [c.c1, c.c2, c.c3]
    values[i], values[j] = values[j], values[i]
    return BellCoefficients(*values)


def test_channel_swap_symmetry():
    # bit flip == (c1 <-> c3) conjugation of phase flip, bit-phase flip
    # == (c2 <-> c3) conjugation of phase flip
    rng = np.random.default_rng(34)
    phase = FlipChannel(ChannelKind.PHASE_FLIP)
    for _ in range(100):
        c = random_valid_coefficients(rng)
        p = float(rng.uniform(0.0, 1.0))
        bit = evolve_coeffs(c, FlipChannel(ChannelKind.BIT_FLIP), p)
        via_phase = _swapped(evolve_coeffs(_swapped(c, 0, 2), phase, p), 0, 2)
        np.testing.assert_array_equal(bit.as_array(), via_phase.as_array())
        bit_phase = evolve_coeffs(c, FlipChannel(ChannelKind.BIT_PHASE_FLIP), p)
        via_phase = _swapped(evolve_coeffs(_swapped(c, 1, 2), phase, p), 1, 2)
        np.testing.assert_array_equal(bit_phase.as_array(),
                                      via_phase.as_array())


def test_preserved_axis_derivative_is_zero():
    c = BellCoefficients(0.5, -0.4, 0.3)
    for kind in ALL_KINDS:
        channel = FlipChannel(kind, gamma=1.3)
        for t in (0.0, 0.7, 3.0):
            assert coeff_derivative(c, channel, t)[channel.preserved_axis] == 0.0


def test_derivative_at_time_zero():
    channel = FlipChannel(ChannelKind.PHASE_FLIP, gamma=1.0)
    dc = coeff_derivative(BellCoefficients(0.3, 0.2, 0.4), channel, 0.0)
    np.testing.assert_allclose(dc, [-0.6, -0.4, 0.0], atol=1e-15)


def test_derivative_rejects_negative_time():
    channel = FlipChannel(ChannelKind.PHASE_FLIP)
    with pytest.raises(NegativeTime):
        coeff_derivative(BellCoefficients(0.3, 0.2, 0.4), channel, -1.0)


def test_derivative_matches_finite_differences():
    # central difference of the evolved coefficients as the oracle
    rng = np.random.default_rng(35)
    h = 1e-6
    for kind in ALL_KINDS:
        channel = FlipChannel(kind, gamma=1.4)
        for _ in range(25):
            c = random_valid_coefficients(rng)
            t = float(rng.uniform(h, 2.0))
            plus = evolve_coeffs(c, channel, p_of_t(t + h, channel.gamma))
            minus = evolve_coeffs(c, channel, p_of_t(t - h, channel.gamma))
            fd = (plus.as_array() - minus.as_array()) / (2.0 * h)
            np.testing.assert_allclose(coeff_derivative(c, channel, t), fd,
                                       atol=1e-6)


def test_derivative_grid_matches_scalar():
    channel = FlipChannel(ChannelKind.BIT_FLIP, gamma=0.8)
    c = BellCoefficients(-0.3, 0.5, 0.2)
    ts = np.linspace(0.0, 3.0, 17)
    grid = coeff_derivative_grid(c, channel, ts)
    scalar = np.array([coeff_derivative(c, channel, float(t)) for t in ts])
    np.testing.assert_allclose(grid, scalar, rtol=1e-15, atol=0)


def test_damping_rate_strictly_positive():
    # gamma * exp(-2 gamma t) > 0 for finite t, so the decaying
    # coefficients keep strictly shrinking and never change sign
    channel = FlipChannel(ChannelKind.PHASE_FLIP, gamma=2.0)
    c = BellCoefficients(0.4, 0.3, 0.1)
    for t in (0.0, 1.0, 10.0, 90.0):
        dc = coeff_derivative(c, channel, t)
        assert dc[0] < 0.0 and dc[1] < 0.0
        assert dc[2] == 0.0
