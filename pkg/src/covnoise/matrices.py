"""Structure matrices over N x N and Z x Z with entries in the closed unit disk.

A structure matrix is a pure entry oracle (n, m) -> complex rather than a
stored array; dense blocks only ever materialize through :func:`truncate`
on an explicit index window.  Builders cover the constant-one matrix,
torus matrices e^{i(nu_n - nu_m)} built from a phase sequence, two-tone
chessboard matrices, and Gram matrices of unit-vector sequences.  Entry
oracles accept integer scalars or integer numpy arrays and broadcast.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .errors import ContractViolationError, ResourceLimitError, UsageError

DEFAULT_WINDOW_CAP = 4096


def window_cap() -> int:
    """Per-side cap for dense truncations; COVNOISE_MAX_WINDOW overrides."""
    raw = os.environ.get("COVNOISE_MAX_WINDOW")
    if raw is None:
        return DEFAULT_WINDOW_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise UsageError(f"COVNOISE_MAX_WINDOW must be an integer, got {raw!r}") from exc
    if cap <= 0:
        raise UsageError(f"COVNOISE_MAX_WINDOW must be positive, got {cap}")
    return cap


class IndexDomain(Enum):
    NATURALS = "N"
    INTEGERS = "Z"

    def contains(self, n: int) -> bool:
        return self is IndexDomain.INTEGERS or n >= 0


class Orientation(Enum):
    """Which parity class of n+m carries the entry 1 in a chessboard matrix."""

    ONE_ON_EVEN_SUM = "one_on_even_sum"
    ONE_ON_ODD_SUM = "one_on_odd_sum"


@dataclass(frozen=True)
class IndexWindow:
    """Inclusive contiguous index range [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise UsageError(f"window must satisfy lo <= hi, got {self.lo}:{self.hi}")

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def indices(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    def validate_for(self, domain: IndexDomain) -> None:
        if domain is IndexDomain.NATURALS and self.lo < 0:
            raise UsageError(f"window {self} has negative indices on the naturals")

    def __str__(self) -> str:
        return f"{self.lo}:{self.hi}"


@dataclass(frozen=True)
class ChessboardParams:
    xi: float
    orientation: Orientation = Orientation.ONE_ON_EVEN_SUM

    def __post_init__(self) -> None:
        if not 0.0 <= self.xi <= 1.0:
            raise UsageError(f"chessboard xi must lie in [0, 1], got {self.xi}")


@dataclass(frozen=True)
class PhaseSequence:
    """Real phase sequence; nu must accept integer arrays and broadcast."""

    nu: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class StructureMatrix:
    """Entry oracle for an infinite matrix with entries in the unit disk.

    entry is pure and deterministic.  hermitian and modulus_one are
    structural facts about the builder, not runtime checks: modulus_one
    marks matrices known to have |entry| identically 1 off the diagonal
    as well as on it, which lets the summation layer use a two-sided
    tail enclosure instead of the generic one-sided bound.
    """

    domain: IndexDomain
    entry: Callable[[np.ndarray, np.ndarray], np.ndarray]
    label: str
    hermitian: bool = True
    modulus_one: bool = False


def _broadcast_pair(n, m) -> tuple[np.ndarray, np.ndarray]:
    return np.broadcast_arrays(np.asarray(n), np.asarray(m))


def constant_one(domain: IndexDomain) -> StructureMatrix:
    def entry(n, m):
        na, _ = _broadcast_pair(n, m)
        return np.ones(na.shape, dtype=np.complex128)[()]

    return StructureMatrix(domain, entry, f"constant_one[{domain.value}]",
                           hermitian=True, modulus_one=True)


def torus_from_phases(domain: IndexDomain, phases: PhaseSequence,
                      label: str | None = None) -> StructureMatrix:
    """Matrix e^{i(nu_n - nu_m)}; Hermitian with unimodular entries."""

    nu = phases.nu

    def entry(n, m):
        na, ma = _broadcast_pair(n, m)
        return np.exp(1j * (np.asarray(nu(na), dtype=float)
                            - np.asarray(nu(ma), dtype=float)))[()]

    return StructureMatrix(domain, entry, label or f"torus[{domain.value}]",
                           hermitian=True, modulus_one=True)


def chessboard(domain: IndexDomain, params: ChessboardParams) -> StructureMatrix:
    """Two-tone matrix: 1 on one parity class of n+m, xi on the other.

    ONE_ON_EVEN_SUM places 1 where n+m is even (so the diagonal is 1 and
    the matrix is normalized); ONE_ON_ODD_SUM swaps the roles, leaving xi
    on the diagonal.  Noise computations ignore the diagonal, so both
    orientations are admissible there; observables require the first.
    """

    if params.orientation is Orientation.ONE_ON_EVEN_SUM:
        even_val, odd_val = 1.0, params.xi
    else:
        even_val, odd_val = params.xi, 1.0

    def entry(n, m):
        na, ma = _broadcast_pair(n, m)
        vals = np.where((na + ma) % 2 == 0, even_val, odd_val)
        return vals.astype(np.complex128)[()]

    label = f"chessboard(xi={params.xi:g},{params.orientation.value})[{domain.value}]"
    return StructureMatrix(domain, entry, label, hermitian=True,
                           modulus_one=(params.xi == 1.0))


def gram_from_vectors(domain: IndexDomain,
                      vectors: Callable[[np.ndarray], np.ndarray],
                      label: str | None = None, *,
                      vectorized: bool = False) -> StructureMatrix:
    """Gram matrix <v_n, v_m> of a unit-vector sequence; PSD by construction.

    vectors maps an index to a complex vector of fixed dimension.  With
    vectorized=True it must instead map an integer array of shape (k,) to
    an array of shape (k, dim).  Any fetched vector whose Euclidean norm
    deviates from 1 by more than 1e-9 is rejected with a diagnostic.
    """

    cache: dict[int, np.ndarray] = {}

    def fetch(idx: np.ndarray) -> np.ndarray:
        if vectorized:
            rows = np.asarray(vectors(idx), dtype=np.complex128)
        else:
            rows = np.asarray([cache.setdefault(int(i), np.asarray(vectors(int(i)), dtype=np.complex128))
                               for i in idx])
        norms = np.linalg.norm(rows, axis=-1)
        bad = np.nonzero(np.abs(norms - 1.0) > 1e-9)[0]
        if bad.size:
            i = int(idx[bad[0]])
            raise UsageError(f"gram vector at index {i} has norm {norms[bad[0]]!r}, expected 1")
        return rows

    def entry(n, m):
        na, ma = _broadcast_pair(n, m)
        flat_n = na.reshape(-1)
        flat_m = ma.reshape(-1)
        uniq, inverse = np.unique(np.concatenate([flat_n, flat_m]), return_inverse=True)
        rows = fetch(uniq)
        vn = rows[inverse[: flat_n.size]]
        vm = rows[inverse[flat_n.size:]]
        out = np.einsum("kd,kd->k", np.conj(vn), vm)
        return out.reshape(na.shape)[()]

    return StructureMatrix(domain, entry, label or f"gram[{domain.value}]",
                           hermitian=True, modulus_one=False)


def truncate(A: StructureMatrix, w: IndexWindow, cap: int | None = None) -> np.ndarray:
    """Dense complex block A[w x w].  Window side is capped (default 4096,
    overridable via COVNOISE_MAX_WINDOW or the cap argument)."""

    w.validate_for(A.domain)
    limit = window_cap() if cap is None else cap
    if w.size > limit:
        raise ResourceLimitError(
            f"window {w} has side {w.size}, exceeding the cap {limit}; "
            f"raise COVNOISE_MAX_WINDOW to materialize it anyway")
    idx = w.indices()
    block = np.asarray(A.entry(idx[:, None], idx[None, :]), dtype=np.complex128)
    return block


def is_psd_truncation(A: StructureMatrix, w: IndexWindow,
                      tol: float = 1e-10) -> tuple[bool, float]:
    """Eigenvalue test for positive semidefiniteness of the w-truncation.

    Returns (flag, smallest eigenvalue); flag is true when the smallest
    eigenvalue is >= -tol.  Rejects blocks that are not Hermitian within
    1e-12 entrywise, since eigvalsh would silently use one triangle.
    """

    block = truncate(A, w)
    defect = float(np.max(np.abs(block - block.conj().T))) if block.size else 0.0
    if defect > 1e-12:
        raise ContractViolationError(
            f"truncation of {A.label} on {w} deviates from Hermitian by {defect:.3e}")
    eigs = np.linalg.eigvalsh((block + block.conj().T) / 2.0)
    smallest = float(eigs[0])
    return smallest >= -tol, smallest


def schur_product(a: StructureMatrix, b: StructureMatrix) -> StructureMatrix:
    """Entrywise product; closed on the unit-disk class."""

    if a.domain is not b.domain:
        raise UsageError(f"schur product needs matching domains, got {a.domain} and {b.domain}")

    def entry(n, m):
        return np.asarray(a.entry(n, m)) * np.asarray(b.entry(n, m))

    return StructureMatrix(a.domain, entry, f"({a.label})*({b.label})",
                           hermitian=a.hermitian and b.hermitian,
                           modulus_one=a.modulus_one and b.modulus_one)


def modulus(a: StructureMatrix) -> StructureMatrix:
    def entry(n, m):
        return np.abs(np.asarray(a.entry(n, m))).astype(np.complex128)[()]

    return StructureMatrix(a.domain, entry, f"|{a.label}|",
                           hermitian=True, modulus_one=a.modulus_one)


def phase_conjugate_multiplier(a: StructureMatrix) -> StructureMatrix:
    """conj(a)/|a| where a is nonzero, 0 where a vanishes.

    Schur-multiplying a by this matrix yields modulus(a); it is the
    multiplier whose boundedness separates a from |a|.
    """

    def entry(n, m):
        vals = np.asarray(a.entry(n, m), dtype=np.complex128)
        mags = np.abs(vals)
        safe = np.where(mags == 0.0, 1.0, mags)
        out = np.where(mags == 0.0, 0.0 + 0.0j, np.conj(vals) / safe)
        return out[()]

    return StructureMatrix(a.domain, entry, f"phase_conj({a.label})",
                           hermitian=a.hermitian, modulus_one=a.modulus_one)


@dataclass(frozen=True)
class PhaseRecoveryFailure:
    """Why a window failed to factor as e^{i(nu_n - nu_m)}.

    kind is "modulus" when some entry is not unimodular within tol and
    indices names that entry twice, or "cocycle" when a product test
    A(n,m)A(m,k) = A(n,k) fails and indices is the first violated triple.
    """

    kind: str
    indices: tuple[int, ...]
    defect: float


def torus_phase_recovery(A: StructureMatrix, w: IndexWindow, tol: float = 1e-10
                         ) -> PhaseSequence | PhaseRecoveryFailure:
    """Factor the w-block as e^{i(nu_n - nu_m)} if it is one.

    Requires unit diagonal on w.  Checks |entry| = 1 within tol and the
    triple products A(n,m)A(m,k) = A(n,k) within tol over all of w^3; on
    success anchors nu(w.lo) = 0 and reads nu(n) = arg A(n, w.lo).  The
    reconstruction then matches the block within 3*tol, which is verified
    before returning.  Failures come back as a value, not an exception.
    """

    block = truncate(A, w)
    idx = w.indices()
    diag = np.abs(np.diagonal(block) - 1.0)
    if diag.max() > 1e-12:
        k = int(np.argmax(diag))
        raise UsageError(f"{A.label} is not normalized on {w}: "
                         f"diagonal at {idx[k]} is {block[k, k]!r}")

    mod_defect = np.abs(np.abs(block) - 1.0)
    if mod_defect.max() > tol:
        n_i, m_i = np.unravel_index(int(np.argmax(mod_defect > tol)), block.shape)
        # argmax of the boolean mask lands on the first True in row-major order
        return PhaseRecoveryFailure("modulus",
                                    (int(idx[n_i]), int(idx[m_i])),
                                    float(mod_defect[n_i, m_i]))

    for i in range(w.size):
        prods = block[i, :, None] * block - block[i, None, :]
        bad = np.abs(prods) > tol
        if bad.any():
            m_i, k_i = np.unravel_index(int(np.argmax(bad)), prods.shape)
            return PhaseRecoveryFailure(
                "cocycle", (int(idx[i]), int(idx[m_i]), int(idx[k_i])),
                float(np.abs(prods[m_i, k_i])))

    values = np.angle(block[:, 0])
    recon = np.exp(1j * (values[:, None] - values[None, :]))
    recon_defect = float(np.max(np.abs(recon - block)))
    if recon_defect > 3 * tol:
        raise ContractViolationError(
            f"phase reconstruction defect {recon_defect:.3e} exceeds 3*tol after "
            f"the cocycle test passed on {w}")

    lo = w.lo

    def nu(n):
        arr = np.asarray(n)
        pos = arr - lo
        if np.any((pos < 0) | (pos >= values.size)):
            raise UsageError(f"recovered phases only cover {w}")
        return values[pos][()]

    return PhaseSequence(nu)


def _zigzag(n: np.ndarray) -> np.ndarray:
    # 0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4, ...
    arr = np.asarray(n)
    return np.where(arr >= 0, 2 * arr, -2 * arr - 1)


class _BlockCache:
    """Deterministic per-index values drawn from a seeded generator.

    Values are regenerated from scratch whenever capacity grows; numpy
    generators fill C-order, so earlier indices keep their values and the
    result is independent of query order.
    """

    def __init__(self, seed: int, make: Callable[[np.random.Generator, int], np.ndarray]):
        self.seed = seed
        self.make = make
        self.values = make(np.random.default_rng(seed), 64)

    def ensure(self, size: int) -> None:
        if size > len(self.values):
            grown = 1 << max(7, int(size - 1).bit_length())
            self.values = self.make(np.random.default_rng(self.seed), grown)

    def take(self, zz: np.ndarray) -> np.ndarray:
        if zz.size:
            self.ensure(int(zz.max()) + 1)
        return self.values[zz]


def seeded_torus(domain: IndexDomain, seed: int = 0) -> StructureMatrix:
    """Torus matrix with reproducible pseudo-random phases in [0, 2pi)."""

    cache = _BlockCache(seed, lambda rng, n: rng.uniform(0.0, 2.0 * math.pi, size=n))

    def nu(n):
        return cache.take(_zigzag(np.asarray(n)))[()]

    return torus_from_phases(domain, PhaseSequence(nu),
                             label=f"seeded_torus(seed={seed})[{domain.value}]")


def seeded_gram(domain: IndexDomain, dim: int = 8, seed: int = 0) -> StructureMatrix:
    """Gram matrix of reproducible random unit vectors in C^dim."""

    if dim < 1:
        raise UsageError(f"gram vector dimension must be >= 1, got {dim}")

    def make(rng: np.random.Generator, n: int) -> np.ndarray:
        flat = rng.normal(size=(n, 2 * dim))
        rows = flat[:, :dim] + 1j * flat[:, dim:]
        return rows / np.linalg.norm(rows, axis=1, keepdims=True)

    cache = _BlockCache(seed, make)

    def vectors(idx: np.ndarray) -> np.ndarray:
        return cache.take(_zigzag(np.asarray(idx)))

    return gram_from_vectors(domain, vectors, vectorized=True,
                             label=f"seeded_gram(dim={dim},seed={seed})[{domain.value}]")


def _complex_from_pair(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise UsageError(f"complex values must be numbers or [re, im] pairs, got {value!r}")


def matrix_from_spec(spec: dict) -> StructureMatrix:
    """Build a matrix from its JSON description.

    Shape: {"kind": ..., "domain": "N" | "Z", plus kind-specific fields}.
    Kinds: constant_one; chessboard (xi, optional orientation); torus with
    "phases" either an explicit array (naturals, indices 0..len-1) or
    {"formula": "linear", "slope": s}; gram with "vectors" given as a list
    of [re, im]-pair lists (naturals, indices 0..len-1).
    """

    if not isinstance(spec, dict):
        raise UsageError(f"matrix spec must be an object, got {type(spec).__name__}")
    try:
        domain = IndexDomain(spec.get("domain", "N"))
    except ValueError as exc:
        raise UsageError(f"unknown domain {spec.get('domain')!r}; use 'N' or 'Z'") from exc
    kind = spec.get("kind")

    if kind == "constant_one":
        return constant_one(domain)

    if kind == "chessboard":
        if "xi" not in spec:
            raise UsageError("chessboard spec needs a 'xi' field")
        raw = spec.get("orientation", Orientation.ONE_ON_EVEN_SUM.value)
        try:
            orientation = Orientation(str(raw).lower())
        except ValueError as exc:
            raise UsageError(f"unknown orientation {raw!r}") from exc
        return chessboard(domain, ChessboardParams(float(spec["xi"]), orientation))

    if kind == "torus":
        phases = spec.get("phases")
        if isinstance(phases, dict):
            if phases.get("formula") != "linear":
                raise UsageError(f"unknown phase formula {phases.get('formula')!r}")
            slope = float(phases.get("slope", 0.0))
            return torus_from_phases(
                domain, PhaseSequence(lambda n: slope * np.asarray(n, dtype=float)),
                label=f"torus(slope={slope:g})[{domain.value}]")
        if isinstance(phases, list):
            if domain is not IndexDomain.NATURALS:
                raise UsageError("explicit phase arrays index the naturals only")
            table = np.asarray([float(p) for p in phases])

            def nu(n):
                arr = np.asarray(n)
                if arr.size and (arr.min() < 0 or arr.max() >= table.size):
                    raise UsageError(
                        f"phase array covers indices 0:{table.size - 1}, got {arr.min()}..{arr.max()}")
                return table[arr][()]

            return torus_from_phases(domain, PhaseSequence(nu),
                                     label=f"torus(table[{table.size}])[N]")
        raise UsageError("torus spec needs 'phases' as an array or a formula object")

    if kind == "gram":
        vecs = spec.get("vectors")
        if not isinstance(vecs, list) or not vecs:
            raise UsageError("gram spec needs a nonempty 'vectors' list")
        if domain is not IndexDomain.NATURALS:
            raise UsageError("explicit gram vectors index the naturals only")
        rows = np.asarray([[_complex_from_pair(c) for c in vec] for vec in vecs])

        def vectors(idx: np.ndarray) -> np.ndarray:
            arr = np.asarray(idx)
            if arr.size and (arr.min() < 0 or arr.max() >= rows.shape[0]):
                raise UsageError(
                    f"vector list covers indices 0:{rows.shape[0] - 1}, got {arr.min()}..{arr.max()}")
            return rows[arr]

        return gram_from_vectors(domain, vectors, vectorized=True,
                                 label=f"gram(list[{rows.shape[0]}])[N]")

    raise UsageError(f"unknown matrix kind {kind!r}")
