"""Tests for the 4x4 matrix kernel."""

import numpy as np
import pytest

from bellqsl import linalg
from bellqsl.channels import ChannelKind, FlipChannel, coeff_derivative
from bellqsl.states import (BellCoefficients, pauli_correlation_matrix,
                            random_valid_coefficients, to_density_matrix)

IDENTITY = np.eye(4, dtype=complex)


def random_complex(rng):
    return rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))


def random_hermitian(rng):
    m = random_complex(rng)
    return (m + m.conj().T) / 2.0


def test_matmul_identity():
    rng = np.random.default_rng(0)
    m = random_complex(rng)
    np.testing.assert_array_equal(linalg.matmul(IDENTITY, m), m)


def test_matmul_diagonal():
    a = np.diag([1.0, 2.0, 3.0, 4.0]).astype(complex)
    b = np.diag([4.0, 3.0, 2.0, 1.0]).astype(complex)
    np.testing.assert_allclose(linalg.matmul(a, b),
                               np.diag([4.0, 6.0, 6.0, 4.0]), atol=0)


def test_trace_cyclicity_against_direct_sum():
    rng = np.random.default_rng(1)
    for _ in range(25):
        a = random_complex(rng)
        b = random_complex(rng)
        # independent oracle: explicit double sum for tr(AB) and tr(BA)
        tr_ab = sum(a[i, j] * b[j, i] for i in range(4) for j in range(4))
        tr_ba = sum(b[i, j] * a[j, i] for i in range(4) for j in range(4))
        assert abs(tr_ab - tr_ba) < 1e-12
        assert abs(np.trace(linalg.matmul(a, b)) - tr_ab) < 1e-12


def test_trace_product_identity():
    assert linalg.trace_product(IDENTITY, IDENTITY) == pytest.approx(4.0)


def test_trace_product_maximally_mixed_purity():
    rho = IDENTITY / 4.0
    assert linalg.trace_product(rho, rho) == pytest.approx(0.25, abs=1e-15)


def test_trace_product_rank_two_purity():
    # spectrum (0.9, 0.1, 0, 0) gives purity 0.81 + 0.01 = 0.82
    rho = to_density_matrix(BellCoefficients(1.0, -0.8, 0.8))
    assert linalg.trace_product(rho, rho).real == pytest.approx(0.82, abs=1e-12)


def test_trace_product_matches_materialized_product():
    rng = np.random.default_rng(2)
    a = random_complex(rng)
    b = random_complex(rng)
    assert linalg.trace_product(a, b) == pytest.approx(
        complex(np.trace(a @ b)), abs=1e-12)


def test_adjoint_involution():
    rng = np.random.default_rng(3)
    m = random_complex(rng)
    np.testing.assert_array_equal(linalg.adjoint(linalg.adjoint(m)), m)


class TestHermitianEigenvalues:
    def test_identity(self):
        np.testing.assert_allclose(linalg.hermitian_eigenvalues(IDENTITY),
                                   np.ones(4), atol=0)

    def test_already_diagonal(self):
        m = np.diag([0.9, 0.1, 0.0, 0.0]).astype(complex)
        np.testing.assert_allclose(linalg.hermitian_eigenvalues(m),
                                   [0.9, 0.1, 0.0, 0.0], atol=1e-14)

    def test_bell_diagonal_matches_population_formula(self):
        c1, c2, c3 = 0.3, 0.2, 0.4
        rho = to_density_matrix(BellCoefficients(c1, c2, c3))
        expected = sorted([(1 + c1 - c2 + c3) / 4, (1 - c1 + c2 + c3) / 4,
                           (1 + c1 + c2 - c3) / 4, (1 - c1 - c2 - c3) / 4],
                          reverse=True)
        np.testing.assert_allclose(linalg.hermitian_eigenvalues(rho),
                                   expected, atol=1e-12)

    def test_rejects_non_hermitian(self):
        m = np.zeros((4, 4), dtype=complex)
        m[0, 1] = 1.0
        with pytest.raises(linalg.NotHermitian):
            linalg.hermitian_eigenvalues(m)

    def test_sum_equals_trace(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            m = random_hermitian(rng)
            vals = linalg.hermitian_eigenvalues(m)
            assert abs(vals.sum() - np.trace(m).real) < 1e-10

    def test_density_matrix_eigenvalues_in_unit_interval(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            rho = to_density_matrix(random_valid_coefficients(rng))
            vals = linalg.hermitian_eigenvalues(rho)
            assert vals.min() >= -1e-10
            assert vals.max() <= 1.0 + 1e-10

    def test_matches_lapack(self):
        rng = np.random.default_rng(6)
        stack = np.array([random_hermitian(rng) for _ in range(64)])
        ours = linalg.hermitian_eigenvalues_stack(stack)
        ref = np.linalg.eigvalsh(stack)[:, ::-1]
        np.testing.assert_allclose(ours, ref, atol=1e-12)

    def test_eigensystem_residuals(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            m = random_hermitian(rng)
            vals, vecs = linalg.hermitian_eigensystem(m)
            for k in range(4):
                residual = np.linalg.norm(m @ vecs[:, k] - vals[k] * vecs[:, k])
                assert residual <= 1e-10


class TestSingularValues:
    def test_zero_matrix(self):
        np.testing.assert_array_equal(
            linalg.singular_values(np.zeros((4, 4), dtype=complex)),
            np.zeros(4))

    def test_signed_diagonal(self):
        m = np.diag([-0.5, 0.5, 0.0, 0.0]).astype(complex)
        np.testing.assert_allclose(linalg.singular_values(m),
                                   [0.5, 0.5, 0.0, 0.0], atol=1e-14)

    def test_density_derivative_at_time_zero(self):
        # phase flip, c = (0.3, 0.2, 0.4), gamma = 1: the derivative of the
        # evolved triple at t = 0 is (-0.6, -0.4, 0), and the matrix built
        # from it has paired singular values (|dc1| + |dc2|)/4 and
        # (|dc1| - |dc2|)/4.
        channel = FlipChannel(ChannelKind.PHASE_FLIP, gamma=1.0)
        dc = coeff_derivative(BellCoefficients(0.3, 0.2, 0.4), channel, 0.0)
        rhodot = pauli_correlation_matrix(*dc)
        np.testing.assert_allclose(linalg.singular_values(rhodot),
                                   [0.25, 0.25, 0.05, 0.05], atol=1e-14)

    def test_invariant_under_permutations(self):
        rng = np.random.default_rng(8)
        perms = [np.eye(4)[list(p)] for p in
                 [(1, 0, 2, 3), (3, 2, 1, 0), (2, 0, 3, 1), (0, 3, 1, 2)]]
        m = random_complex(rng)
        base = linalg.singular_values(m)
        for u in perms:
            for v in perms:
                rotated = u.astype(complex) @ m @ v.astype(complex)
                np.testing.assert_allclose(linalg.singular_values(rotated),
                                           base, atol=1e-10)

    def test_hermitian_case_is_sorted_absolute_eigenvalues(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            m = random_hermitian(rng)
            expected = np.sort(np.abs(linalg.hermitian_eigenvalues(m)))[::-1]
            np.testing.assert_allclose(linalg.singular_values(m), expected,
                                       atol=1e-10)

    def test_general_case_matches_lapack_svd(self):
        rng = np.random.default_rng(10)
        for _ in range(50):
            m = random_complex(rng)
            np.testing.assert_allclose(linalg.singular_values(m),
                                       np.linalg.svd(m, compute_uv=False),
                                       atol=1e-10)

    def test_stack_matches_per_matrix_path(self):
        rng = np.random.default_rng(11)
        stack = np.array([random_hermitian(rng) for _ in range(32)])
        batched = linalg.singular_values_stack(stack)
        for k in range(32):
            np.testing.assert_allclose(batched[k],
                                       linalg.singular_values(stack[k]),
                                       atol=1e-12)

    def test_stack_rejects_non_hermitian(self):
        stack = np.zeros((3, 4, 4), dtype=complex)
        stack[1, 0, 1] = 1.0
        with pytest.raises(linalg.NotHermitian):
            linalg.singular_values_stack(stack)


def test_as_matrix4_rejects_wrong_shape():
    with pytest.raises(ValueError):
        linalg.as_matrix4(np.eye(3))
