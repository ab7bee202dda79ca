"""Noise sequences of infinite structure matrices and covariant box
observables at finite truncation, with certified error brackets."""

from .errors import ContractViolationError, ResourceLimitError, UsageError
from .matrices import (
    ChessboardParams,
    IndexDomain,
    IndexWindow,
    Orientation,
    PhaseRecoveryFailure,
    PhaseSequence,
    StructureMatrix,
    chessboard,
    constant_one,
    gram_from_vectors,
    is_psd_truncation,
    matrix_from_spec,
    modulus,
    phase_conjugate_multiplier,
    schur_product,
    seeded_gram,
    seeded_torus,
    torus_from_phases,
    torus_phase_recovery,
    truncate,
    window_cap,
)
from .noise import (
    AsymptoticEstimate,
    ChessboardNoiseValue,
    NoiseClassification,
    NoiseQuery,
    NoiseValue,
    ProbabilityWeights,
    asymptotic_noise_estimate,
    chessboard_noise_closed_form,
    is_noiseless_z,
    lattice_sum_exact,
    moment,
    noise_sequence,
    noise_value,
    probability_weights,
    reference_moment,
)
from .observables import (
    IntervalSet,
    TruncatedOperator,
    angle_from_string,
    covariance_defect,
    interval_kernel,
    kernel_by_difference,
    moment_kernel,
    moment_operator,
    noise_operator_diagonal,
    noise_operator_diagonal_dense,
    observable_operator,
    shift_interval,
)
from .schur_analysis import (
    BlockDiagonalReport,
    GrowthRecord,
    NormEstimate,
    NormMethod,
    block_diagonal_norm_divergence,
    half_circle_modulus_section,
    modulus_growth_table,
    operator_norm,
    row_sum_bounds,
    sylvester_hadamard,
    sylvester_hadamard_example,
)

__version__ = "0.1.0"
