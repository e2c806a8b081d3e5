"""Bell-diagonal state algebra: correlation triples, spectrum, matrices.

A two-qubit Bell-diagonal state is fixed entirely by the signed triple
(c1, c2, c3) multiplying sigma_i x sigma_i; both single-qubit marginals
are maximally mixed.  Basis conventions used throughout:

* computational ordering |00>, |01>, |10>, |11>;
* Bell vectors |Psi+-> = (|00> +- |11>)/sqrt(2) and
  |Phi+-> = (|01> +- |10>)/sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg

VALIDITY_TOL = 1e-12

IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (PAULI_X, PAULI_Y, PAULI_Z)

# sigma_i x sigma_i / 4, the three traceless building blocks of Eq.-style
# Bell-diagonal matrices; also reused to assemble density-matrix derivatives.
CORRELATION_BASIS = np.stack([np.kron(s, s) / 4.0 for s in PAULI])

IDENTITY_4 = np.eye(4, dtype=complex)


class InvalidState(ValueError):
    """Raised when a coefficient triple is not a physical state."""


class NotBellDiagonal(ValueError):
    """Raised when a density matrix has no Bell-diagonal representation."""


@dataclass(frozen=True)
class BellCoefficients:
    """Signed correlation triple (c1, c2, c3), each in [-1, 1]."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name, value in (("c1", self.c1), ("c2", self.c2), ("c3", self.c3)):
            if not abs(value) <= 1.0 + 1e-12:
                raise ValueError(f"|{name}| must be <= 1, got {value}")

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3])

    def magnitudes(self) -> tuple[float, float, float]:
        return abs(self.c1), abs(self.c2), abs(self.c3)


def werner(c: float) -> BellCoefficients:
    """Werner state with all three coefficient magnitudes equal to c.

    The sign pattern (c, -c, c) keeps the triple physical for every
    c in [0, 1]; it is c |Psi+><Psi+| + (1 - c) I/4.
    """
    return BellCoefficients(c, -c, c)


@dataclass(frozen=True)
class BellSpectrum:
    """The four Bell-basis populations of a Bell-diagonal state."""

    lam_plus_psi: float
    lam_minus_psi: float
    lam_plus_phi: float
    lam_minus_phi: float

    def as_array(self) -> np.ndarray:
        return np.array([self.lam_plus_psi, self.lam_minus_psi,
                         self.lam_plus_phi, self.lam_minus_phi])

    def min(self) -> float:
        return min(self.lam_plus_psi, self.lam_minus_psi,
                   self.lam_plus_phi, self.lam_minus_phi)


def spectrum(c: BellCoefficients) -> BellSpectrum:
    """Bell-basis populations lambda(+-, Psi/Phi) of the state.

    lambda_Psi(+-) = (1 +- c1 -+ c2 + c3)/4 and
    lambda_Phi(+-) = (1 +- c1 +- c2 - c3)/4.
    """
    c1, c2, c3 = c.c1, c.c2, c.c3
    return BellSpectrum(
        lam_plus_psi=(1.0 + c1 - c2 + c3) / 4.0,
        lam_minus_psi=(1.0 - c1 + c2 + c3) / 4.0,
        lam_plus_phi=(1.0 + c1 + c2 - c3) / 4.0,
        lam_minus_phi=(1.0 - c1 - c2 - c3) / 4.0,
    )


def is_valid(c: BellCoefficients, tol: float = VALIDITY_TOL) -> bool:
    """True when all four spectrum values are >= -tol (the tetrahedron)."""
    return spectrum(c).min() >= -tol


def pauli_correlation_matrix(c1: float, c2: float, c3: float) -> np.ndarray:
    """The traceless part (c1 XX + c2 YY + c3 ZZ)/4 as a 4x4 matrix."""
    return np.tensordot(np.array([c1, c2, c3]), CORRELATION_BASIS, axes=1)


def to_density_matrix(c: BellCoefficients) -> np.ndarray:
    """4x4 density matrix (I + c1 XX + c2 YY + c3 ZZ)/4."""
    return IDENTITY_4 / 4.0 + pauli_correlation_matrix(c.c1, c.c2, c.c3)


def from_density_matrix(m: np.ndarray) -> BellCoefficients:
    """Recover (c1, c2, c3) via c_i = tr(m (sigma_i x sigma_i)).

    Raises :class:`NotBellDiagonal` when the reconstruction differs from
    the input by more than 1e-8 entrywise, which catches non-unit trace,
    single-qubit Bloch components, and off-family coherences alike.
    """
    m = linalg.as_matrix4(m)
    coeffs = [complex(linalg.trace_product(m, np.kron(s, s))).real
              for s in PAULI]
    candidate = BellCoefficients(*[min(max(x, -1.0), 1.0) for x in coeffs])
    residual = float(np.max(np.abs(m - to_density_matrix(candidate))))
    if residual > 1e-8:
        raise NotBellDiagonal(
            f"matrix is not Bell-diagonal (reconstruction residual {residual:.3e})")
    return candidate


def random_valid_coefficients(rng: np.random.Generator) -> BellCoefficients:
    """Draw a triple uniformly from the valid tetrahedron.

    Rejection sampling from the cube [-1, 1]^3; the acceptance ratio is
    1/3, so a draw costs three candidates on average.
    """
    while True:
        c1, c2, c3 = rng.uniform(-1.0, 1.0, size=3)
        candidate = BellCoefficients(c1, c2, c3)
        if is_valid(candidate):
            return candidate
