"""Noise sequences of structure matrices via certified partial summation.

For a structure matrix A the l-th moment of the row variable at n is

    M(n, l) = c(l) * sum_{k != n} |A(n, k)|^l / (k - n)^2,
    c(l)    = (pi / sqrt 3)^l * 3 / pi^2,

and the noise number is s_n(l) = (pi / sqrt 3)^l - M(n, l), which is
nonnegative because |A| <= 1 and the full lattice sum of 1/(k - n)^2 is
pi^2/3 on the integers (pi^2/6 plus a partial sum on the naturals).
Every computed quantity carries a certified bracket [lower, upper]
derived from integral tail bounds, never a heuristic convergence check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ResourceLimitError, UsageError
from .matrices import IndexDomain, IndexWindow, ChessboardParams, Orientation, StructureMatrix

_REF_BASE = math.pi / math.sqrt(3.0)
DEFAULT_TERM_CAP = 10**8
_CHUNK = 1 << 19

ODD_INVERSE_SQUARES_TOTAL = math.pi**2 / 8.0
EVEN_INVERSE_SQUARES_TOTAL = math.pi**2 / 24.0


def _validate_order(l: int) -> None:
    if not isinstance(l, (int, np.integer)) or isinstance(l, bool) or l < 1:
        raise UsageError(f"moment order must be an integer >= 1, got {l!r}")


def reference_moment(l: int) -> float:
    """(pi / sqrt 3)^l, the common limit of the canonical moments."""
    _validate_order(l)
    return _REF_BASE**l


def lattice_sum_exact(domain: IndexDomain, n: int) -> float:
    """sum_{k in domain, k != n} 1/(k - n)^2 in closed form.

    pi^2/3 on the integers for every n; pi^2/6 + sum_{j=1..n} 1/j^2 on
    the naturals.
    """
    if domain is IndexDomain.INTEGERS:
        return math.pi**2 / 3.0
    if n < 0:
        raise UsageError(f"naturals index must be >= 0, got {n}")
    return math.pi**2 / 6.0 + math.fsum(1.0 / (j * j) for j in range(1, n + 1))


def odd_inverse_squares(k: int) -> float:
    """sum_{m=0..k} 1/(2m+1)^2; k = -1 gives the empty sum 0."""
    if k < -1:
        raise UsageError(f"partial-sum index must be >= -1, got {k}")
    return math.fsum(1.0 / ((2 * m + 1) ** 2) for m in range(k + 1))


def even_inverse_squares(k: int) -> float:
    """sum_{m=1..k} 1/(2m)^2; k = 0 gives the empty sum 0."""
    if k < 0:
        raise UsageError(f"partial-sum index must be >= 0, got {k}")
    return math.fsum(1.0 / ((2 * m) ** 2) for m in range(1, k + 1))


@dataclass(frozen=True)
class NoiseQuery:
    n: int
    l: int
    tol: float = 1e-8

    def __post_init__(self) -> None:
        _validate_order(self.l)
        if not self.tol > 0.0:
            raise UsageError(f"tolerance must be positive, got {self.tol}")


@dataclass(frozen=True)
class NoiseValue:
    """Point estimate with a certified enclosure and the cutoff used."""

    value: float
    lower: float
    upper: float
    cutoff: int

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class ProbabilityWeights:
    """Row probability measure: weight 3/(pi^2 (k-n)^2) off the center.

    On the naturals the center carries the deficit 1 - c * lattice sum,
    which is nonnegative; on the integers the center weight is 0 and the
    off-center weights already sum to 1.
    """

    domain: IndexDomain
    center: int
    center_weight: float

    def weight(self, k):
        arr = np.asarray(k)
        if self.domain is IndexDomain.NATURALS and arr.size and arr.min() < 0:
            raise UsageError("weights on the naturals take indices >= 0")
        d = arr - self.center
        safe = np.where(d == 0, 1, d)
        off = 3.0 / (math.pi**2 * safe.astype(float) ** 2)
        return np.where(d == 0, self.center_weight, off)[()]


def probability_weights(domain: IndexDomain, n: int) -> ProbabilityWeights:
    if not domain.contains(n):
        raise UsageError(f"index {n} is not in {domain}")
    if domain is IndexDomain.INTEGERS:
        center = 0.0
    else:
        center = 1.0 - (3.0 / math.pi**2) * lattice_sum_exact(domain, n)
    return ProbabilityWeights(domain, n, center)


def _tail_coefficient(l: int) -> float:
    # c(l) = (pi/sqrt 3)^l * 3/pi^2; equals 1 at l = 2
    return _REF_BASE**l * 3.0 / math.pi**2


def _row_partial_sum(A: StructureMatrix, n: int, l: int, cutoff: int) -> float:
    """sum |A(n, k)|^l / (k - n)^2 over the finite range, outward from n.

    The range is |k - n| <= cutoff intersected with the domain, widened on
    the naturals so the whole segment below n is always included.  Terms
    are evaluated outward in fixed-size blocks; blocks are summed pairwise
    and combined with exact compensated addition, so the result does not
    depend on the chunking.
    """

    naturals = A.domain is IndexDomain.NATURALS
    down_max = n if naturals else cutoff
    j_max = max(cutoff, down_max)
    pieces: list[float] = []
    for start in range(1, j_max + 1, _CHUNK):
        js = np.arange(start, min(start + _CHUNK, j_max + 1))
        inv = 1.0 / (js.astype(float) ** 2)
        up = js[js <= cutoff]
        if up.size:
            mags = np.abs(np.asarray(A.entry(n, n + up)))
            pieces.append(float(np.sum(mags**l * inv[: up.size])))
        down = js[js <= down_max]
        if down.size:
            mags = np.abs(np.asarray(A.entry(n, n - down)))
            pieces.append(float(np.sum(mags**l * inv[: down.size])))
    return math.fsum(pieces)


def _select_cutoff(A: StructureMatrix, q: NoiseQuery) -> tuple[int, float]:
    """Smallest cutoff whose bracket width is <= q.tol, plus the term count.

    Generic matrices get the one-sided tail bound c(l) * t/K with t = 2 on
    the integers and 1 on the naturals (|A| <= 1, integral comparison).
    Matrices flagged modulus_one admit the two-sided enclosure
    c(l) * t * (1/(K+1), 1/K), whose width c(l) * t / (K (K+1)) makes K
    scale like sqrt(1/tol) instead of 1/tol.
    """

    coeff = _tail_coefficient(q.l)
    sides = 2.0 if A.domain is IndexDomain.INTEGERS else 1.0
    budget = coeff * sides / q.tol
    if A.modulus_one:
        cutoff = int(math.sqrt(budget)) + 1
    else:
        cutoff = int(budget) + 1
    cutoff = max(cutoff, 8)
    if A.domain is IndexDomain.INTEGERS:
        terms = 2 * cutoff
    else:
        terms = cutoff + max(q.n, 0)
    return cutoff, terms


def moment(A: StructureMatrix, q: NoiseQuery) -> NoiseValue:
    """Certified bracket for the l-th row moment at q.n.

    The enclosure is [partial + tail_lo, partial + tail_hi]: tail_hi uses
    |A| <= 1, tail_lo is 0 in general and the matching lower integral
    bound when |A| is identically 1.  Exceeding the term cap raises a
    resource error that names the achievable tolerance.
    """

    if not A.domain.contains(q.n):
        raise UsageError(f"index {q.n} is not in {A.domain}")
    cutoff, terms = _select_cutoff(A, q)
    if terms > DEFAULT_TERM_CAP:
        coeff = _tail_coefficient(q.l)
        sides = 2.0 if A.domain is IndexDomain.INTEGERS else 1.0
        k_max = DEFAULT_TERM_CAP // (2 if A.domain is IndexDomain.INTEGERS else 1)
        if A.modulus_one:
            achievable = coeff * sides / (k_max * (k_max + 1.0))
        else:
            achievable = coeff * sides / k_max
        raise ResourceLimitError(
            f"tolerance {q.tol:g} needs {terms} terms, over the cap {DEFAULT_TERM_CAP}; "
            f"achievable tolerance at the cap is about {achievable:.3g}")

    coeff = _tail_coefficient(q.l)
    sides = 2.0 if A.domain is IndexDomain.INTEGERS else 1.0
    partial = coeff * _row_partial_sum(A, q.n, q.l, cutoff)
    tail_hi = coeff * sides / cutoff
    tail_lo = coeff * sides / (cutoff + 1.0) if A.modulus_one else 0.0
    lower = partial + tail_lo
    upper = partial + tail_hi
    return NoiseValue(0.5 * (lower + upper), lower, upper, cutoff)


def noise_value(A: StructureMatrix, q: NoiseQuery) -> NoiseValue:
    """Certified bracket for s_n(l) = (pi/sqrt 3)^l - M(n, l)."""
    m = moment(A, q)
    ref = reference_moment(q.l)
    return NoiseValue(ref - m.value, ref - m.upper, ref - m.lower, m.cutoff)


def noise_sequence(A: StructureMatrix, l: int, n_range: IndexWindow,
                   tol: float = 1e-8) -> list[NoiseValue]:
    n_range.validate_for(A.domain)
    return [noise_value(A, NoiseQuery(n, l, tol)) for n in range(n_range.lo, n_range.hi + 1)]


class NoiseClassification(Enum):
    ASYMPTOTICALLY_NOISELESS = "asymptotically_noiseless"
    POSITIVE_LIMIT = "positive_limit"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class AsymptoticEstimate:
    classification: NoiseClassification
    estimate: float
    sample_points: tuple[int, ...]
    samples: tuple[NoiseValue, ...]


def asymptotic_noise_estimate(A: StructureMatrix, l: int, tol: float = 1e-3,
                              horizon: int = 4096) -> AsymptoticEstimate:
    """Heuristic large-n classification of the noise sequence.

    Samples s_n(l) at n = horizon/4, horizon/2, horizon (brackets computed
    at tol/10 so their width does not swamp the thresholds).  Noiseless
    needs every upper endpoint under tol plus the analytic decay allowance
    c(l) * 2/horizon; a positive limit needs all lower endpoints above
    2*tol with the three values within 10*tol of each other.  This is a
    numerical heuristic, never a proof.
    """

    _validate_order(l)
    if horizon < 16:
        raise UsageError(f"horizon must be >= 16, got {horizon}")
    if not tol > 0.0:
        raise UsageError(f"tolerance must be positive, got {tol}")
    points = tuple(sorted({horizon // 4, horizon // 2, horizon}))
    samples = tuple(noise_value(A, NoiseQuery(p, l, tol / 10.0)) for p in points)
    allowance = _tail_coefficient(l) * 2.0 / horizon
    values = [s.value for s in samples]
    if max(s.upper for s in samples) < tol + allowance:
        cls = NoiseClassification.ASYMPTOTICALLY_NOISELESS
    elif min(s.lower for s in samples) > 2.0 * tol and max(values) - min(values) < 10.0 * tol:
        cls = NoiseClassification.POSITIVE_LIMIT
    else:
        cls = NoiseClassification.UNDETERMINED
    return AsymptoticEstimate(cls, samples[-1].value, points, samples)


def is_noiseless_z(B: StructureMatrix, l: int, n_range: IndexWindow,
                   tol: float = 1e-6) -> bool:
    """True when every bracket over n_range certifies s_n(l) < tol."""
    if B.domain is not IndexDomain.INTEGERS:
        raise UsageError("noiselessness in this sense is an integers-domain notion")
    _validate_order(l)
    return all(noise_value(B, NoiseQuery(n, l, tol / 2.0)).upper < tol
               for n in range(n_range.lo, n_range.hi + 1))


@dataclass(frozen=True)
class ChessboardNoiseValue:
    """Closed-form noise number plus the convention that produced it."""

    value: float
    convention: str


def chessboard_noise_closed_form(params: ChessboardParams, domain: IndexDomain,
                                 n: int, l: int) -> ChessboardNoiseValue:
    """Closed form for the chessboard noise numbers.

    Naturals (ones on even sums required): with n = 2k or 2k + 1,

        s_n(l) = f(l) * (pi^2/3 - B_k - xi^l * A_n - xi^l * pi^2/8 - pi^2/24)

    where f(l) = pi^(l-2) / 3^(l/2-1), B_k = sum_{m=1..k} 1/(2m)^2 and
    A_n is the odd partial sum with top term (2k-1)^2 for even n and
    (2k+1)^2 for odd n.  Integers: the value is n-independent and equals
    f(l) * (1 - xi^l) * pi^2/4 when the ones sit on even index sums, and
    f(l) * (1 - xi^l) * pi^2/12 when they sit on odd index sums.  Both
    constants are fixed by direct summation (split the lattice sum by
    parity: even differences give pi^2/12, odd give pi^2/4); the result
    records which convention applied.
    """

    _validate_order(l)
    front = math.pi ** (l - 2) * 3.0 ** (1.0 - l / 2.0)
    xi_l = params.xi**l

    if domain is IndexDomain.NATURALS:
        if params.orientation is not Orientation.ONE_ON_EVEN_SUM:
            raise UsageError("the naturals closed form requires ones on even index sums")
        if n < 0:
            raise UsageError(f"naturals index must be >= 0, got {n}")
        k, odd = divmod(n, 2)
        alpha = odd_inverse_squares(k if odd else k - 1)
        beta = even_inverse_squares(k)
        value = front * (math.pi**2 / 3.0 - beta - xi_l * alpha
                         - xi_l * ODD_INVERSE_SQUARES_TOTAL - EVEN_INVERSE_SQUARES_TOTAL)
        return ChessboardNoiseValue(value, "naturals, ones on even sums: partial-sum form")

    if params.orientation is Orientation.ONE_ON_EVEN_SUM:
        value = front * (1.0 - xi_l) * math.pi**2 / 4.0
        return ChessboardNoiseValue(value, "integers, ones on even sums: constant pi^2/4")
    value = front * (1.0 - xi_l) * math.pi**2 / 12.0
    return ChessboardNoiseValue(value, "integers, ones on odd sums: constant pi^2/12")
