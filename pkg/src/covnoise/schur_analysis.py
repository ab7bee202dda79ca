"""Operator norms and the modulus-map unboundedness demonstrations.

Two quantitative effects: the finite sections of the modulus of the
half-circle kernel |i_{[0,pi]}| have norms growing like a harmonic sum
even though the kernel itself generates a bounded observable, and the
normalized Sylvester matrices have norm 1 while their entrywise moduli
have norm 2^(p/2).  Together they exhibit the unboundedness of A -> |A|
as a Schur-multiplier phenomenon on concrete sections.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .errors import ContractViolationError, ResourceLimitError, UsageError
from .observables import IntervalSet, kernel_by_difference

MAX_POWER_ITERATIONS = 10_000
_RELATIVE_CHANGE = 1e-12
_EIG_SIZE_LIMIT = 1500


class NormMethod(Enum):
    HERMITIAN_EIGEN = "hermitian_eigen"
    POWER_ITERATION = "power_iteration"


@dataclass(frozen=True)
class NormEstimate:
    value: float
    method: NormMethod
    iterations: int
    residual: float


class NormConvergenceError(ResourceLimitError):
    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


def _power_iteration_gram(M: np.ndarray) -> NormEstimate:
    # Iterates v <- M^H M v; the Rayleigh quotient of the Gram matrix is
    # |M v|^2, so the norm estimate sqrt(rho) approaches the top singular
    # value from below.  Deterministic all-ones start, perturbed through
    # basis vectors if it happens to be annihilated.
    rows, cols = M.shape
    if not np.any(M):
        return NormEstimate(0.0, NormMethod.POWER_ITERATION, 0, 0.0)
    v = np.ones(cols, dtype=np.complex128) / math.sqrt(cols)
    basis_next = 0
    estimate = 0.0
    for iteration in range(1, MAX_POWER_ITERATIONS + 1):
        mv = M @ v
        rho = float(np.real(np.vdot(mv, mv)))
        if rho == 0.0:
            if basis_next >= cols:
                return NormEstimate(0.0, NormMethod.POWER_ITERATION, iteration, 0.0)
            v = np.zeros(cols, dtype=np.complex128)
            v[basis_next] = 1.0
            basis_next += 1
            continue
        new_estimate = math.sqrt(rho)
        change = abs(new_estimate - estimate) / new_estimate
        estimate = new_estimate
        if change <= _RELATIVE_CHANGE:
            return NormEstimate(estimate, NormMethod.POWER_ITERATION, iteration, change)
        g = M.conj().T @ mv
        v = g / np.linalg.norm(g)
    raise NormConvergenceError(
        f"power iteration did not reach relative change {_RELATIVE_CHANGE:g} in "
        f"{MAX_POWER_ITERATIONS} iterations; best estimate {estimate:.12g}", estimate)


def operator_norm(M: np.ndarray, method: NormMethod | None = None,
                  eig_size_limit: int = _EIG_SIZE_LIMIT) -> NormEstimate:
    """Spectral norm of a dense matrix.

    Hermitian inputs within the size limit use a full eigensolve (largest
    absolute eigenvalue, deterministic); everything else runs power
    iteration on the Gram product, which handles non-Hermitian inputs and
    spectra symmetric around zero alike.
    """

    M = np.asarray(M)
    if M.ndim != 2 or M.size == 0:
        raise UsageError(f"operator norm needs a nonempty 2-d array, got shape {M.shape}")
    if not np.all(np.isfinite(M.real)) or (np.iscomplexobj(M) and not np.all(np.isfinite(M.imag))):
        raise UsageError("operator norm needs finite entries")
    M = M.astype(np.complex128, copy=False)

    hermitian = (M.shape[0] == M.shape[1]
                 and float(np.max(np.abs(M - M.conj().T))) <= 1e-12)
    if method is None:
        method = (NormMethod.HERMITIAN_EIGEN
                  if hermitian and M.shape[0] <= eig_size_limit
                  else NormMethod.POWER_ITERATION)
    if method is NormMethod.HERMITIAN_EIGEN:
        if not hermitian:
            raise UsageError("the eigensolve path needs a Hermitian matrix")
        eigs = np.linalg.eigvalsh((M + M.conj().T) / 2.0)
        return NormEstimate(float(np.max(np.abs(eigs))), NormMethod.HERMITIAN_EIGEN, 0, 0.0)
    return _power_iteration_gram(M)


def row_sum_bounds(M: np.ndarray, tol: float = 1e-12) -> tuple[float, float]:
    """(smallest, largest) row sum of an entrywise-nonnegative symmetric
    matrix; these bracket its norm."""

    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.size == 0:
        raise UsageError(f"row-sum bounds need a nonempty square matrix, got {M.shape}")
    if np.iscomplexobj(M):
        if float(np.max(np.abs(M.imag))) > tol:
            raise UsageError("row-sum bounds need a real matrix")
        M = M.real
    M = M.astype(float, copy=False)
    low = float(M.min())
    if low < -tol:
        i, j = np.unravel_index(int(np.argmin(M)), M.shape)
        raise UsageError(f"entry ({i}, {j}) = {low:g} is negative")
    if float(np.max(np.abs(M - M.T))) > tol:
        raise UsageError("row-sum bounds need a symmetric matrix")
    sums = M.sum(axis=1)
    return float(sums.min()), float(sums.max())


def half_circle_modulus_section(r: int) -> np.ndarray:
    """(r+1) x (r+1) section of |i_{[0,pi]}|: 1/2 on the diagonal,
    1/(pi |n-m|) at odd distances, 0 at even ones."""

    if r < 0:
        raise UsageError(f"section order must be >= 0, got {r}")
    half = IntervalSet.from_pairs([(0.0, math.pi)])
    column = kernel_by_difference(half, np.arange(r + 1))
    return np.abs(scipy.linalg.toeplitz(column))


@dataclass(frozen=True)
class GrowthRecord:
    """One row of the growth table for the sections B_r = |i_{[0,pi]}|.

    min_row_sum is the literal smallest row sum (it coincides with the
    first row; that is checked, not assumed), harmonic_bound is the
    divergent lower bound (sum of odd reciprocals up to r) / pi, and norm
    dominates min_row_sum which strictly dominates harmonic_bound.
    """

    r: int
    min_row_sum: float
    norm: float
    harmonic_bound: float


def modulus_growth_table(r_values) -> list[GrowthRecord]:
    """Growth table over odd section orders r in [5, 20000].

    Sections up to the eigensolve size limit get the deterministic
    Hermitian path; larger ones fall back to power iteration.  The chain
    norm >= min_row_sum > harmonic_bound is asserted for every row.
    """

    records = []
    for r in r_values:
        r = int(r)
        if r < 5 or r % 2 == 0 or r > 20_000:
            raise UsageError(f"section orders must be odd, in [5, 20000], got {r}")
        section = half_circle_modulus_section(r)
        smallest, _ = row_sum_bounds(section)
        first_row = float(section[0].sum())
        if abs(first_row - smallest) > 1e-12:
            warnings.warn(f"smallest row sum {smallest:.12g} is not the first row "
                          f"sum {first_row:.12g} at r={r}; using the literal minimum",
                          stacklevel=2)
        norm = operator_norm(section)
        bound = math.fsum(1.0 / j for j in range(1, r + 1, 2)) / math.pi
        if not (norm.value + 1e-9 >= smallest > bound):
            raise ContractViolationError(
                f"growth chain failed at r={r}: norm={norm.value!r}, "
                f"min row sum={smallest!r}, harmonic bound={bound!r}")
        records.append(GrowthRecord(r, smallest, norm.value, bound))
    return records


def sylvester_hadamard(p: int) -> np.ndarray:
    """2^p Sylvester-Hadamard matrix by doubling [[1,1],[1,-1]]."""
    if not 1 <= p <= 12:
        raise UsageError(f"doubling order must be in [1, 12], got {p}")
    H = np.array([[1.0, 1.0], [1.0, -1.0]])
    for _ in range(p - 1):
        H = np.block([[H, H], [H, -H]])
    return H


def sylvester_hadamard_example(p: int) -> tuple[np.ndarray, NormEstimate, NormEstimate]:
    """Normalized Sylvester matrix A_p = H / 2^(p/2) with the norms of
    A_p (equal to 1: the matrix is orthogonal) and of its entrywise
    modulus (equal to 2^(p/2): a rank-one flat matrix)."""

    A = sylvester_hadamard(p) / 2.0 ** (p / 2.0)
    return A, operator_norm(A), operator_norm(np.abs(A))


@dataclass(frozen=True)
class BlockDiagonalReport:
    """Direct sum of A_1 .. A_p_max: overall norm stays 1 while the
    per-block modulus norms grow without bound."""

    p_max: int
    dimension: int
    overall_norm: NormEstimate
    block_modulus_norms: tuple[float, ...]


def block_diagonal_norm_divergence(p_max: int = 10) -> BlockDiagonalReport:
    if not 1 <= p_max <= 10:
        raise UsageError(f"p_max must be in [1, 10], got {p_max}")
    blocks = [sylvester_hadamard(p) / 2.0 ** (p / 2.0) for p in range(1, p_max + 1)]
    full = scipy.linalg.block_diag(*blocks)
    modulus_norms = tuple(operator_norm(np.abs(b)).value for b in blocks)
    return BlockDiagonalReport(p_max, full.shape[0], operator_norm(full), modulus_norms)
