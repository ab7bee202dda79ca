import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import covnoise as cn
from covnoise.errors import ResourceLimitError, UsageError
from covnoise.noise import odd_inverse_squares, even_inverse_squares

N = cn.IndexDomain.NATURALS
Z = cn.IndexDomain.INTEGERS

# independent partial sums, frozen from math.fsum over explicit ranges
H2_10 = 1.5497677311665408
H2_100 = 1.6349839001848923


def h2(n):
    return math.fsum(1.0 / k**2 for k in range(1, n + 1))


def test_frozen_partial_sums_match_direct():
    assert h2(10) == pytest.approx(H2_10, abs=1e-15)
    assert h2(100) == pytest.approx(H2_100, abs=1e-15)


def test_reference_moment():
    base = math.pi / math.sqrt(3.0)
    for l in (1, 2, 3, 4, 7):
        assert cn.reference_moment(l) == pytest.approx(base**l, rel=1e-15)
    assert cn.reference_moment(2) == pytest.approx(math.pi**2 / 3.0, rel=1e-15)


@pytest.mark.parametrize("n", [0, 1, 5, 37])
def test_lattice_sum_naturals(n):
    direct = math.fsum(1.0 / (k - n) ** 2 for k in range(0, 200001) if k != n)
    exact = cn.lattice_sum_exact(N, n)
    assert exact == pytest.approx(math.pi**2 / 6.0 + h2(n), rel=1e-14)
    assert abs(exact - direct) <= 1e-5  # truncation of the direct sum


def test_lattice_sum_integers_is_n_free():
    values = {cn.lattice_sum_exact(Z, n) for n in (-9, 0, 4)}
    assert values == {math.pi**2 / 3.0}


def test_parity_partial_sums():
    assert odd_inverse_squares(-1) == 0.0
    assert odd_inverse_squares(0) == 1.0
    assert odd_inverse_squares(1) == pytest.approx(1.0 + 1.0 / 9.0, rel=1e-15)
    assert even_inverse_squares(0) == 0.0
    assert even_inverse_squares(2) == pytest.approx(0.25 + 1.0 / 16.0, rel=1e-15)
    assert odd_inverse_squares(200000) == pytest.approx(math.pi**2 / 8.0, abs=1e-5)
    assert even_inverse_squares(200000) == pytest.approx(math.pi**2 / 24.0, abs=2e-6)
    with pytest.raises(UsageError):
        odd_inverse_squares(-2)
    with pytest.raises(UsageError):
        even_inverse_squares(-1)


def test_probability_weights_sum_to_one():
    for domain, n in ((N, 0), (N, 7), (Z, -3)):
        p = cn.probability_weights(domain, n)
        lo = 0 if domain is N else n - 200000
        ks = np.arange(lo, n + 200001)
        total = math.fsum(np.atleast_1d(p.weight(ks)))
        assert abs(total - 1.0) <= 2e-5
        assert p.center_weight >= 0.0
    assert cn.probability_weights(Z, 5).center_weight == 0.0
    assert cn.probability_weights(N, 0).center_weight == pytest.approx(0.5, rel=1e-14)
    p = cn.probability_weights(Z, 2)
    assert float(p.weight(3)) == pytest.approx(3.0 / math.pi**2, rel=1e-15)
    with pytest.raises(UsageError):
        cn.probability_weights(N, 0).weight(-1)


def test_query_validation():
    with pytest.raises(UsageError):
        cn.NoiseQuery(0, 0)
    with pytest.raises(UsageError):
        cn.NoiseQuery(0, -1)
    with pytest.raises(UsageError):
        cn.NoiseQuery(0, True)
    with pytest.raises(UsageError):
        cn.NoiseQuery(0, 2, tol=0.0)
    with pytest.raises(UsageError):
        cn.noise_value(cn.constant_one(N), cn.NoiseQuery(-1, 2))


def test_moment_matches_noise_value():
    A = cn.chessboard(Z, cn.ChessboardParams(0.5))
    q = cn.NoiseQuery(0, 2, 1e-6)
    m = cn.moment(A, q)
    s = cn.noise_value(A, q)
    ref = cn.reference_moment(2)
    assert s.value == pytest.approx(ref - m.value, abs=1e-15)
    assert s.lower == pytest.approx(ref - m.upper, abs=1e-15)
    assert s.upper == pytest.approx(ref - m.lower, abs=1e-15)


def test_canonical_naturals_bracket():
    A = cn.constant_one(N)
    for n, known in ((0, math.pi**2 / 6.0), (10, math.pi**2 / 6.0 - H2_10)):
        v = cn.noise_value(A, cn.NoiseQuery(n, 2, 1e-8))
        assert v.lower <= known <= v.upper
        assert v.width <= 1e-8


def test_canonical_integers_noiseless_tight():
    A = cn.constant_one(Z)
    v = cn.noise_value(A, cn.NoiseQuery(-3, 4, 1e-8))
    assert v.lower <= 0.0 <= v.upper
    assert v.width <= 1e-8


matrix_pool = [
    lambda: cn.constant_one(N),
    lambda: cn.constant_one(Z),
    lambda: cn.chessboard(N, cn.ChessboardParams(0.3)),
    lambda: cn.chessboard(Z, cn.ChessboardParams(0.8)),
    lambda: cn.seeded_torus(Z, seed=2),
    lambda: cn.seeded_gram(N, 8, seed=2),
]


@given(pick=st.integers(0, len(matrix_pool) - 1), n=st.integers(-25, 25),
       l=st.integers(1, 4))
@settings(max_examples=50, deadline=None)
def test_bracket_refinement_and_nonnegativity(pick, n, l):
    """Brackets contain their refinement at tol/10 and never certify a
    negative noise number."""
    A = matrix_pool[pick]()
    if A.domain is N:
        n = abs(n)
    coarse = cn.noise_value(A, cn.NoiseQuery(n, l, 1e-4))
    fine = cn.noise_value(A, cn.NoiseQuery(n, l, 1e-5))
    assert coarse.lower <= coarse.value <= coarse.upper
    assert coarse.lower <= fine.lower and fine.upper <= coarse.upper
    assert coarse.upper >= -1e-15
    assert fine.width <= coarse.width


@given(xi_lo=st.floats(0.0, 1.0), xi_hi=st.floats(0.0, 1.0),
       n=st.integers(-12, 12), l=st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_modulus_monotonicity(xi_lo, xi_hi, n, l):
    """Entrywise larger modulus can only lower the noise numbers."""
    lo, hi = sorted((xi_lo, xi_hi))
    a = cn.chessboard(Z, cn.ChessboardParams(lo))
    b = cn.chessboard(Z, cn.ChessboardParams(hi))
    va = cn.noise_value(a, cn.NoiseQuery(n, l, 1e-5))
    vb = cn.noise_value(b, cn.NoiseQuery(n, l, 1e-5))
    assert va.upper >= vb.lower - 1e-15


@given(seed=st.integers(0, 20), n=st.integers(-15, 15), l=st.integers(1, 3))
@settings(max_examples=30, deadline=None)
def test_torus_noise_equals_constant(seed, n, l):
    A = cn.seeded_torus(Z, seed=seed)
    ref = cn.constant_one(Z)
    va = cn.noise_value(A, cn.NoiseQuery(n, l, 1e-8))
    vb = cn.noise_value(ref, cn.NoiseQuery(n, l, 1e-8))
    assert abs(va.value - vb.value) <= va.width + vb.width


def test_phase_invariance_is_bitwise():
    A = cn.seeded_torus(Z, seed=6)
    B = cn.modulus(A)
    for n, l in ((0, 2), (-4, 1), (7, 3)):
        va = cn.noise_value(A, cn.NoiseQuery(n, l, 1e-7))
        vb = cn.noise_value(B, cn.NoiseQuery(n, l, 1e-7))
        assert (va.value, va.lower, va.upper, va.cutoff) == \
               (vb.value, vb.lower, vb.upper, vb.cutoff)


def test_term_cap_reports_achievable_tolerance():
    A = cn.chessboard(N, cn.ChessboardParams(0.3))
    with pytest.raises(ResourceLimitError, match="achievable"):
        cn.noise_value(A, cn.NoiseQuery(0, 2, 1e-10))
    assert cn.noise_value(A, cn.NoiseQuery(0, 2, 1e-4)).width <= 1e-4


def test_noise_sequence_matches_pointwise():
    A = cn.constant_one(Z)
    seq = cn.noise_sequence(A, 2, cn.IndexWindow(-2, 2), tol=1e-6)
    assert len(seq) == 5
    single = cn.noise_value(A, cn.NoiseQuery(0, 2, 1e-6))
    assert seq[2].value == single.value


# chessboard closed forms: the naturals formula is checked against brackets,
# the integers constants against both orientations.

@pytest.mark.parametrize("xi", [0.0, 0.3, 0.7, 1.0])
@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_chessboard_closed_form_inside_bracket(xi, l):
    A = cn.chessboard(N, cn.ChessboardParams(xi))
    tol = 1e-8 if xi == 1.0 else 1e-5
    for n in (0, 1, 2, 7, 40, 99, 100):
        cf = cn.chessboard_noise_closed_form(cn.ChessboardParams(xi), N, n, l)
        v = cn.noise_value(A, cn.NoiseQuery(n, l, tol))
        assert v.lower - 1e-9 <= cf.value <= v.upper + 1e-9


def test_chessboard_closed_form_tight_spot_checks():
    # higher precision at a few points: bracket width 1e-7
    for xi, n, l in ((0.3, 5, 2), (0.7, 12, 1)):
        cf = cn.chessboard_noise_closed_form(cn.ChessboardParams(xi), N, n, l)
        v = cn.noise_value(cn.chessboard(N, cn.ChessboardParams(xi)),
                           cn.NoiseQuery(n, l, 1e-7))
        assert v.lower - 1e-9 <= cf.value <= v.upper + 1e-9


def test_chessboard_closed_form_special_values():
    one = cn.chessboard_noise_closed_form(cn.ChessboardParams(1.0), N, 0, 2)
    assert one.value == pytest.approx(math.pi**2 / 6.0, rel=1e-14)
    zero = cn.chessboard_noise_closed_form(cn.ChessboardParams(0.0), N, 0, 2)
    assert zero.value == pytest.approx(7.0 * math.pi**2 / 24.0, rel=1e-14)
    flat = cn.chessboard_noise_closed_form(cn.ChessboardParams(1.0), Z, 5, 3)
    assert flat.value == 0.0


def test_chessboard_closed_form_integers_constants():
    for xi in (0.0, 0.5, 1.0):
        even = cn.chessboard_noise_closed_form(
            cn.ChessboardParams(xi), Z, 0, 2)
        assert even.value == pytest.approx((1 - xi**2) * math.pi**2 / 4.0, abs=1e-14)
        odd = cn.chessboard_noise_closed_form(
            cn.ChessboardParams(xi, cn.Orientation.ONE_ON_ODD_SUM), Z, 0, 2)
        assert odd.value == pytest.approx((1 - xi**2) * math.pi**2 / 12.0, abs=1e-14)
        assert "even" in even.convention and "odd" in odd.convention
    # n-independence of the closed form
    vals = {cn.chessboard_noise_closed_form(cn.ChessboardParams(0.5), Z, n, 2).value
            for n in range(-6, 7)}
    assert len(vals) == 1


def test_chessboard_closed_form_rejects_odd_orientation_on_naturals():
    with pytest.raises(UsageError):
        cn.chessboard_noise_closed_form(
            cn.ChessboardParams(0.5, cn.Orientation.ONE_ON_ODD_SUM), N, 0, 2)


@pytest.mark.parametrize("xi", [0.0, 0.3, 0.7, 1.0])
def test_difference_identities_and_monotone_chain(xi):
    """Consecutive closed-form noise numbers telescope: the even-to-odd step
    drops xi^2/(2k+1)^2 and the odd-to-even step drops 1/(2k+2)^2."""
    params = cn.ChessboardParams(xi)
    for k in range(0, 40):
        s0 = cn.chessboard_noise_closed_form(params, N, 2 * k, 2).value
        s1 = cn.chessboard_noise_closed_form(params, N, 2 * k + 1, 2).value
        s2 = cn.chessboard_noise_closed_form(params, N, 2 * k + 2, 2).value
        assert abs((s0 - s1) - xi**2 / (2 * k + 1) ** 2) <= 1e-12
        assert abs((s1 - s2) - 1.0 / (2 * k + 2) ** 2) <= 1e-12
        assert s0 >= s1 > s2


def test_is_noiseless_z():
    assert cn.is_noiseless_z(cn.seeded_torus(Z, seed=1), 2, cn.IndexWindow(-4, 4))
    assert not cn.is_noiseless_z(cn.chessboard(Z, cn.ChessboardParams(0.5)), 2,
                                 cn.IndexWindow(-4, 4))
    with pytest.raises(UsageError):
        cn.is_noiseless_z(cn.constant_one(N), 2, cn.IndexWindow(0, 4))


def test_asymptotic_classifications():
    noiseless = cn.asymptotic_noise_estimate(cn.seeded_torus(N, seed=2), 2)
    assert noiseless.classification is cn.NoiseClassification.ASYMPTOTICALLY_NOISELESS
    positive = cn.asymptotic_noise_estimate(
        cn.chessboard(N, cn.ChessboardParams(0.5)), 2)
    assert positive.classification is cn.NoiseClassification.POSITIVE_LIMIT
    assert positive.estimate == pytest.approx(0.75 * math.pi**2 / 4.0, abs=2e-3)
    # a short horizon leaves the constant-one decay unresolved
    murky = cn.asymptotic_noise_estimate(cn.constant_one(N), 2, horizon=16)
    assert murky.classification is cn.NoiseClassification.UNDETERMINED
    with pytest.raises(UsageError):
        cn.asymptotic_noise_estimate(cn.constant_one(N), 2, horizon=8)


def test_asymptotic_estimate_reports_samples():
    est = cn.asymptotic_noise_estimate(cn.constant_one(N), 2, horizon=4096)
    assert est.sample_points == (1024, 2048, 4096)
    assert len(est.samples) == 3
    assert est.estimate == est.samples[-1].value
