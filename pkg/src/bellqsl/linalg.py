"""Dense 4x4 complex-matrix kernel: products, traces, adjoints, eigenvalues.

Matrices are plain ``numpy.ndarray`` objects of shape (4, 4) and dtype
complex128.  The Hermitian eigensolver is a cyclic Jacobi iteration
(complex rotations), compiled with numba so that large stacks of
matrices, as produced by the quadrature grids of the numeric speed-limit
bound, stay cheap on a single core.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

HERMITIAN_TOL = 1e-10
_JACOBI_OFFDIAG_TOL = 1e-13
_JACOBI_MAX_SWEEPS = 100


class NotHermitian(ValueError):
    """Raised when an operation requires a Hermitian matrix and gets none."""


def as_matrix4(m) -> np.ndarray:
    """Coerce to a (4, 4) complex128 array, validating the shape."""
    a = np.asarray(m, dtype=complex)
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    return a


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Standard matrix product of two 4x4 matrices."""
    return as_matrix4(a) @ as_matrix4(b)


def adjoint(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix4(m).conj().T


def trace_product(a: np.ndarray, b: np.ndarray) -> complex:
    """tr(a @ b) as the direct double sum, without forming the product."""
    a = as_matrix4(a)
    b = as_matrix4(b)
    return complex(np.sum(a * b.T))


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix4(m)
    return float(np.max(np.abs(m - m.conj().T))) <= tol


@njit(cache=True)
def _jacobi_diagonalize(a, v, want_vectors):
    # Cyclic Jacobi sweeps on a Hermitian 4x4 matrix `a` (modified in
    # place).  Stops when the off-diagonal Frobenius norm drops below
    # the absolute tolerance, hard cap on sweeps.  When `want_vectors`
    # the accumulated unitary lands in `v` (columns are eigenvectors).
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = 0.0
        for p in range(3):
            for q in range(p + 1, 4):
                off += a[p, q].real ** 2 + a[p, q].imag ** 2
        if math.sqrt(2.0 * off) < _JACOBI_OFFDIAG_TOL:
            break
        for p in range(3):
            for q in range(p + 1, 4):
                apq = a[p, q]
                ab = abs(apq)
                if ab == 0.0:
                    continue
                phase = apq / ab
                tau = (a[q, q].real - a[p, p].real) / (2.0 * ab)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                s_fwd = s * phase
                s_bwd = s * np.conj(phase)
                # a <- R^dag a R with R the rotation in the (p, q) plane
                for i in range(4):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - s_bwd * aiq
                    a[i, q] = s_fwd * aip + c * aiq
                for j in range(4):
                    apj = a[p, j]
                    aqj = a[q, j]
                    a[p, j] = c * apj - s_fwd * aqj
                    a[q, j] = s_bwd * apj + c * aqj
                if want_vectors:
                    for i in range(4):
                        vip = v[i, p]
                        viq = v[i, q]
                        v[i, p] = c * vip - s_bwd * viq
                        v[i, q] = s_fwd * vip + c * viq


@njit(cache=True)
def _hermitize_stack(stack):
    # Replace every matrix by its Hermitian part in place (absorbing the
    # roundoff that Kraus products leave behind) and report the largest
    # deviation max |m[i,j] - conj(m[j,i])| seen anywhere in the stack.
    worst = 0.0
    for k in range(stack.shape[0]):
        a = stack[k]
        for i in range(4):
            asym = 2.0 * abs(a[i, i].imag)
            if asym > worst:
                worst = asym
            a[i, i] = complex(a[i, i].real, 0.0)
            for j in range(i + 1, 4):
                diff = a[i, j] - np.conj(a[j, i])
                asym = abs(diff)
                if asym > worst:
                    worst = asym
                mean = (a[i, j] + np.conj(a[j, i])) / 2.0
                a[i, j] = mean
                a[j, i] = np.conj(mean)
    return worst


@njit(cache=True)
def _jacobi_eigvals_stack(stack, take_abs):
    # Eigenvalues of each (already Hermitized) matrix, sorted descending;
    # optionally of their absolute values, which for Hermitian input are
    # the singular values.
    n = stack.shape[0]
    out = np.empty((n, 4))
    dummy = np.empty((1, 1), dtype=np.complex128)
    for k in range(n):
        _jacobi_diagonalize(stack[k], dummy, False)
        for i in range(4):
            v = stack[k, i, i].real
            out[k, i] = abs(v) if take_abs else v
        # insertion sort, descending
        for i in range(1, 4):
            v = out[k, i]
            j = i - 1
            while j >= 0 and out[k, j] < v:
                out[k, j + 1] = out[k, j]
                j -= 1
            out[k, j + 1] = v
    return out


def _checked_stack(ms: np.ndarray) -> np.ndarray:
    ms = np.asarray(ms, dtype=complex)
    if ms.ndim != 3 or ms.shape[1:] != (4, 4):
        raise ValueError(f"expected an (n, 4, 4) stack, got shape {ms.shape}")
    work = np.ascontiguousarray(ms).copy()
    asym = _hermitize_stack(work)
    if asym > HERMITIAN_TOL:
        raise NotHermitian("input is not Hermitian within tolerance "
                           f"{HERMITIAN_TOL} (max asymmetry {asym:.3e})")
    return work


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian 4x4 matrix, sorted descending.

    Raises :class:`NotHermitian` when max |m[i,j] - conj(m[j,i])| exceeds
    ``HERMITIAN_TOL``.  The input is symmetrized before diagonalization.
    """
    work = _checked_stack(as_matrix4(m)[np.newaxis, :, :])
    return _jacobi_eigvals_stack(work, False)[0]


def hermitian_eigensystem(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching eigenvector columns.

    Ties keep the order in which the Jacobi iteration produced them.
    """
    work = _checked_stack(as_matrix4(m)[np.newaxis, :, :])[0]
    vectors = np.eye(4, dtype=complex)
    _jacobi_diagonalize(work, vectors, True)
    vals = np.real(np.diag(work))
    order = np.argsort(-vals, kind="stable")
    return vals[order], vectors[:, order]


def hermitian_eigenvalues_stack(ms: np.ndarray) -> np.ndarray:
    """Batched :func:`hermitian_eigenvalues` for an (n, 4, 4) stack."""
    return _jacobi_eigvals_stack(_checked_stack(ms), False)


def singular_values(m: np.ndarray) -> np.ndarray:
    """Singular values of a 4x4 matrix, sorted descending.

    Hermitian inputs take the fast path |eigenvalues|; general matrices
    go through the square roots of the eigenvalues of adjoint(m) @ m.
    """
    m = as_matrix4(m)
    if is_hermitian(m):
        work = _checked_stack(m[np.newaxis, :, :])
        return _jacobi_eigvals_stack(work, True)[0]
    gram = (m.conj().T @ m)[np.newaxis, :, :]
    vals = _jacobi_eigvals_stack(_checked_stack(gram), False)[0]
    return np.sqrt(np.clip(vals, 0.0, None))


def singular_values_stack(ms: np.ndarray) -> np.ndarray:
    """Batched singular values for a Hermitian (n, 4, 4) stack.

    This is the hot path of the numeric bound: the density-matrix
    derivative is Hermitian at every grid point, so the singular values
    are the absolute eigenvalues, sorted descending per row.
    """
    return _jacobi_eigvals_stack(_checked_stack(ms), True)
