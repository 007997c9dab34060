import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hinf_interp.characteristics import c_H, c_J_estimate, outer_extremal, standard_jones
from hinf_interp.errors import BracketFailure
from hinf_interp.halfplane import PointSequence
from hinf_interp.numerics import is_psd, min_eigen_hermitian
from hinf_interp.pick import (_PencilNorm, duality_lower_bound, estimate_M, minimal_norm,
                              pick_matrix, szego_gram)
from strategies import data_for, separated_sequences, sequences

RHO_TWO = 2 + math.sqrt(3)


def two_point_rho_closed_form(y1, y2, w1, w2):
    """Minimal norm for two points on the imaginary axis from det Q = 0.

    Q = [[(r - |w1|^2)/(2 y1), (r - w1 conj w2)/(y1 + y2)],
         [conj, (r - |w2|^2)/(2 y2)]] with r = rho^2; the determinant is a
    quadratic in r whose larger root is rho*^2 (when above max |w|^2).
    """
    a11, a22, c = 1 / (2 * y1), 1 / (2 * y2), 1 / (y1 + y2)
    p = w1 * np.conj(w2)
    A = a11 * a22 - c * c
    B = -a11 * a22 * (abs(w1) ** 2 + abs(w2) ** 2) + 2 * c * c * p.real
    C = a11 * a22 * abs(w1) ** 2 * abs(w2) ** 2 - c * c * abs(p) ** 2
    r = (-B + math.sqrt(max(B * B - 4 * A * C, 0.0))) / (2 * A)
    return max(math.sqrt(r), max(abs(w1), abs(w2)))


# ------------------------------------------------------------ Pick matrix

def test_single_point_matrix():
    Z = PointSequence(np.array([1j]))
    assert pick_matrix(Z, [0.5], 1.0)[0, 0] == pytest.approx(0.375)


def test_two_point_determinant_vanishes(two_points):
    Q = pick_matrix(two_points, [1, -1], RHO_TWO)
    scale = np.max(np.abs(Q))
    assert abs(np.linalg.det(Q)) < 1e-8 * scale ** 2


def test_constant_data_gives_scaled_gram(two_points):
    Q = pick_matrix(two_points, [0.3, 0.3], 1.0)
    assert np.allclose(Q, 0.91 * szego_gram(two_points))
    assert is_psd(Q)


@given(sequences(max_n=6), st.data())
def test_matrix_is_hermitian_with_real_positive_scaled_diagonal(Z, data):
    w = data.draw(data_for(Z.n))
    Q = pick_matrix(Z, w, 1.5)
    assert np.array_equal(Q, Q.conj().T)
    assert np.allclose(np.diag(Q).real, (1.5 ** 2 - np.abs(w) ** 2) / (2 * Z.y))


# ------------------------------------------------------------ minimal norm

def test_constant_data_norm_one():
    Z = PointSequence(np.array([1j, 2 + 3j, -1 + 0.2j]))
    assert minimal_norm(Z, [1, 1, 1]).rho_star == 1.0


def test_two_point_minimal_norm(two_points):
    res = minimal_norm(two_points, [1, -1])
    assert res.rho_star == pytest.approx(RHO_TWO, abs=1e-6)
    below, at = res.certificate
    assert below < 0 <= at + 1e-10


@given(st.floats(0.1, 10), st.floats(0.1, 10), st.data())
def test_two_point_against_closed_form(y1, y2, data):
    if abs(y1 - y2) < 1e-3:
        return
    w = data.draw(data_for(2))
    Z = PointSequence(np.array([1j * y1, 1j * y2]))
    expected = two_point_rho_closed_form(y1, y2, w[0], w[1])
    assert minimal_norm(Z, w, tol=1e-10).rho_star == pytest.approx(expected, rel=1e-7, abs=1e-9)


def test_certificate_brackets(two_points):
    res = minimal_norm(two_points, [1, 1j])
    tol = 1e-8
    up = pick_matrix(two_points, [1, 1j], res.rho_star * (1 + tol), scaled=True)
    down = pick_matrix(two_points, [1, 1j], res.rho_star * (1 - tol), scaled=True)
    assert is_psd(up) and not is_psd(down)


def test_bracket_failure_is_reported(monkeypatch, two_points):
    import hinf_interp.pick as pick
    monkeypatch.setattr(pick, "c_HJ", lambda Z: (0.5 / math.e, 0))
    with pytest.raises(BracketFailure):
        pick.minimal_norm(two_points, [1, -1])


@given(separated_sequences(max_n=5), st.data(), st.floats(1.0, 10.0))
def test_feasibility_is_monotone(Z, data, factor):
    w = data.draw(data_for(Z.n))
    rho = minimal_norm(Z, w).rho_star
    if rho == 0:
        return
    assert is_psd(pick_matrix(Z, w, rho * (1 + 1e-7) * factor, scaled=True))


@given(separated_sequences(max_n=5), st.data())
def test_scale_equivariance(Z, data):
    w = data.draw(data_for(Z.n))
    if np.max(np.abs(w)) < 1e-3:
        return
    base = minimal_norm(Z, w, tol=1e-10).rho_star
    for lam in (2, 1j, -3):
        assert minimal_norm(Z, lam * w, tol=1e-10).rho_star == pytest.approx(abs(lam) * base, rel=1e-8)


@given(separated_sequences(max_n=5), st.data(), st.floats(0, 2 * np.pi))
def test_common_phase_invariance(Z, data, phi):
    w = data.draw(data_for(Z.n))
    if np.max(np.abs(w)) < 1e-3:
        return
    a = minimal_norm(Z, w, tol=1e-10).rho_star
    b = minimal_norm(Z, np.exp(1j * phi) * w, tol=1e-10).rho_star
    assert b == pytest.approx(a, rel=1e-8)


@given(separated_sequences(min_n=2, max_n=6), st.data())
def test_pencil_route_agrees_with_bisection(Z, data):
    w = data.draw(data_for(Z.n))
    if np.max(np.abs(w)) < 1e-3:
        return
    pencil = max(_PencilNorm(Z)(w), np.max(np.abs(w)))
    tight = minimal_norm(Z, w, tol=1e-10, psd_tol=1e-15).rho_star
    assert pencil == pytest.approx(tight, rel=1e-6)
    # the default PSD slack can only accept early, never late
    assert minimal_norm(Z, w, tol=1e-10).rho_star <= pencil * (1 + 1e-8)


# ------------------------------------------------------------ estimate of M_n

def test_single_point_estimate(one_point):
    for seed in range(3):
        assert estimate_M(one_point, seed=seed).m_hat == pytest.approx(1.0)


def test_two_point_estimate(two_points):
    est = estimate_M(two_points, samples=200, seed=7)
    assert est.m_hat == pytest.approx(RHO_TWO, abs=1e-4)
    # extremal data is +-1 up to a common phase
    ratio = est.argmax_w[1] / est.argmax_w[0]
    assert ratio == pytest.approx(-1, abs=1e-3)


def test_two_point_estimate_matches_exhaustive_phase_grid(two_points):
    grid = np.linspace(0, 2 * np.pi, 721)
    best = max(minimal_norm(two_points, [1, np.exp(1j * t)], tol=1e-9).rho_star for t in grid)
    assert estimate_M(two_points, samples=50, seed=1).m_hat == pytest.approx(best, abs=1e-4)


def test_estimate_is_deterministic():
    Z = PointSequence(np.array([1j, 2 + 0.5j, -1 + 3j]))
    a = estimate_M(Z, samples=40, seed=3)
    b = estimate_M(Z, samples=40, seed=3)
    assert a.m_hat == b.m_hat and np.array_equal(a.argmax_w, b.argmax_w)


@pytest.mark.parametrize("seed", range(8))
def test_estimate_reaches_duality_bound(seed):
    rng = np.random.default_rng(seed)
    Z = PointSequence(rng.uniform(-3, 3, 3) + 1j * np.exp(rng.uniform(-1, 1, 3)))
    est = estimate_M(Z, samples=200, seed=seed)
    assert est.m_hat >= c_H(Z)[0] - 1e-6
    cj = c_J_estimate(Z, [standard_jones(), outer_extremal()])[0]
    assert est.m_hat <= math.e * cj + 1e-6


def test_duality_lower_bound_examples(one_point, two_points):
    assert duality_lower_bound(one_point) == 1
    assert duality_lower_bound(two_points) == pytest.approx(3.5)
    assert duality_lower_bound(two_points) <= estimate_M(two_points, seed=0).m_hat + 1e-9


def test_estimate_rejects_zero_samples(two_points):
    with pytest.raises(ValueError):
        estimate_M(two_points, samples=0)


def test_scaled_and_plain_matrices_are_congruent(two_points):
    w = np.array([0.3, -0.9j])
    for rho in (0.95, 1.2, 3.0):
        plain = min_eigen_hermitian(pick_matrix(two_points, w, rho))
        scaled = min_eigen_hermitian(pick_matrix(two_points, w, rho, scaled=True))
        assert np.sign(plain) == np.sign(scaled)
