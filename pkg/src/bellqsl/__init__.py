"""Quantum speed limit times for two-qubit Bell-diagonal states.

The package computes the unified ML/MT speed-limit bound for
Bell-diagonal states evolving under local phase, bit, and bit-phase
flip channels, both through closed-form case expressions and through a
from-scratch numeric evaluation, together with the classical
correlation and quantum discord traces that share the same critical
time.
"""

from .channels import (ChannelKind, FlipChannel, NegativeTime, apply_kraus,
                       coeff_derivative, evolve_coeffs, kraus_operators,
                       p_of_t)
from .correlations import (CorrelationTriple, classical_correlation,
                           correlation_triple, discord_oracle,
                           mutual_information, quantum_discord)
from .linalg import (NotHermitian, adjoint, hermitian_eigenvalues,
                     hermitian_eigensystem, matmul, singular_values,
                     trace_product)
from .qslt import (DomainError, QsltResult, QuadratureFailure,
                   bures_like_distance, closed_form_from_time,
                   closed_form_initial, critical_time, numeric_qslt,
                   werner_qslt)
from .states import (BellCoefficients, BellSpectrum, InvalidState,
                     NotBellDiagonal, from_density_matrix, is_valid,
                     random_valid_coefficients, spectrum, to_density_matrix,
                     werner)

__version__ = "0.1.0"

__all__ = [
    "BellCoefficients",
    "BellSpectrum",
    "ChannelKind",
    "CorrelationTriple",
    "DomainError",
    "FlipChannel",
    "InvalidState",
    "NegativeTime",
    "NotBellDiagonal",
    "NotHermitian",
    "QsltResult",
    "QuadratureFailure",
    "adjoint",
    "apply_kraus",
    "bures_like_distance",
    "classical_correlation",
    "closed_form_from_time",
    "closed_form_initial",
    "coeff_derivative",
    "correlation_triple",
    "critical_time",
    "discord_oracle",
    "evolve_coeffs",
    "from_density_matrix",
    "hermitian_eigensystem",
    "hermitian_eigenvalues",
    "is_valid",
    "kraus_operators",
    "matmul",
    "mutual_information",
    "numeric_qslt",
    "p_of_t",
    "quantum_discord",
    "random_valid_coefficients",
    "singular_values",
    "spectrum",
    "to_density_matrix",
    "trace_product",
    "werner",
    "werner_qslt",
]
