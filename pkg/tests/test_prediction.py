import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from noisygrover.analysis import monte_carlo_average
from noisygrover.engine import RunConfig
from noisygrover.noise import NoiseMoments
from noisygrover.prediction import (
    compute_f,
    noise_regime,
    predict_general,
    predict_isotropic,
    shared_hardware_moments,
    shared_hardware_relations,
)


def test_noiseless_prediction():
    p = predict_isotropic(12, 0.0)
    assert (p.P0, p.P1, p.Pfar) == (1.0, 0.0, 0.0)
    g = predict_general(NoiseMoments.noiseless(), 9, 17)
    assert (g.P0, g.P1, g.Pfar) == (1.0, 0.0, 0.0)


def test_isotropic_values():
    p = predict_isotropic(12, 0.005)
    # x = pi * 12 * 64 * 25e-6
    x = math.pi * 0.0192
    assert p.P1 == pytest.approx(x / 2) and p.P1 == pytest.approx(0.03016, abs=1e-5)
    assert p.Pfar == pytest.approx(0.6250 * x) and p.Pfar == pytest.approx(0.03770, abs=1e-5)
    assert p.P0 == pytest.approx(0.93214, abs=1e-5)
    assert p.p1 == pytest.approx(p.P1 / 12)
    assert p.p_far == pytest.approx(p.Pfar / 4096)
    assert p.weak_regime


@given(st.integers(2, 30), st.floats(1e-6, 0.05))
def test_four_ninths(n, eps):
    p = predict_isotropic(n, eps)
    assert p.P1 / (p.P1 + p.Pfar) == pytest.approx(4 / 9, rel=1e-12)
    assert p.P0 + p.P1 + p.Pfar == pytest.approx(1.0, abs=1e-12)


@given(st.integers(2, 30), st.floats(0, 0.05), st.integers(0, 2**30))
def test_general_reduces_to_isotropic(n, eps, m):
    m %= 1 << n
    iso = predict_isotropic(n, eps)
    for model in (NoiseMoments.isotropic(eps), NoiseMoments.isotropic(eps, phase=False)):
        g = predict_general(model, n, m, far_count="asymptotic")
        assert g.P1 == pytest.approx(iso.P1, rel=1e-14, abs=1e-14)
        assert g.Pfar == pytest.approx(iso.Pfar, rel=1e-14, abs=1e-14)
        assert g.P0 == pytest.approx(iso.P0, rel=1e-14, abs=1e-14)


def test_exact_far_count():
    n, eps = 10, 0.003
    g = predict_general(NoiseMoments.isotropic(eps), n, 0)
    assert g.Pfar == pytest.approx(predict_isotropic(n, eps).Pfar * (1024 - 11) / 1024, rel=1e-14)
    with pytest.raises(ValueError):
        predict_general(NoiseMoments.isotropic(eps), n, 0, far_count="all")


def test_bias_terms():
    n, m, b = 8, 0b00000111, 1e-3
    f = compute_f(m, n)
    mean = np.array([0.0, 0.0, 0.0, b])
    g = predict_general(NoiseMoments(mean_alpha=mean), n, m)
    bias = (n * b) ** 2 / 16
    assert g.p1 == pytest.approx(bias + b**2)
    assert g.p_far == pytest.approx(bias)
    mean = np.array([0.0, b, 0.0, 0.0])
    g = predict_general(NoiseMoments(mean_alpha=mean, mean_gamma=mean), n, m)
    assert g.p_far == pytest.approx((f * 2 * b) ** 2 / 16)


def test_cross_covariance_enters_far_probability():
    c = 1e-6
    cov = np.zeros((4, 4))
    cov[1, 3] = cov[3, 1] = c
    cov[1, 1] = cov[3, 3] = 2e-6
    n = 6
    g0 = predict_general(NoiseMoments(cov_alpha=cov), n, 0)
    g1 = predict_general(NoiseMoments(cov_alpha=cov), n, 63)
    sqN = 8.0
    assert g0.p_far - g1.p_far == pytest.approx(math.pi / (32 * sqN) * 2 * n * c)


def test_anisotropic_p1_against_simulation():
    s = 0.004
    cov = np.diag([0.0, 0.0, s * s, 0.0])
    model = NoiseMoments(cov_alpha=cov, cov_gamma=cov)
    pred = predict_general(model, 10, 5)
    assert pred.p1 == pytest.approx(math.pi / 8 * 32 * 2 * s * s)
    est = monte_carlo_average(RunConfig(n=10, marked=5, noise=model, seed=1, trials=1000), threads=4)
    p1_sim, p1_se = est.P1[0] / 10, est.P1[1] / 10
    assert abs(p1_sim - pred.p1) < 4 * p1_se


def test_compute_f():
    assert compute_f(0b10001, 5) == 1
    assert compute_f(0, 7) == 7
    assert compute_f(127, 7) == -7
    with pytest.raises(ValueError):
        compute_f(32, 5)


def test_shared_hardware():
    eps = 0.01
    mg, cg = shared_hardware_relations(np.zeros(4), eps**2 * np.eye(4))
    np.testing.assert_array_equal(mg, np.zeros(4))
    np.testing.assert_array_equal(cg, eps**2 * np.eye(4))
    mg, _ = shared_hardware_relations([0, 0, 0, 0.2], np.zeros((4, 4)))
    np.testing.assert_array_equal(mg, [0, 0.2, 0, 0])
    cov = np.zeros((4, 4))
    cov[2, 3] = cov[3, 2] = 0.3
    _, cg = shared_hardware_relations(np.zeros(4), cov)
    assert cg[1, 2] == -0.3 and cg[2, 1] == -0.3
    assert np.count_nonzero(cg) == 2
    m = shared_hardware_moments(np.zeros(4), cov + np.eye(4))
    assert isinstance(m, NoiseMoments)


def test_shared_hardware_matches_conjugation():
    # w (sum a_mu sigma_mu) w = sum gamma_mu sigma_mu
    from oracles import SIGMA, W

    a = np.array([0.1, 0.2, 0.3, 0.4])
    g, _ = shared_hardware_relations(a, np.zeros((4, 4)))
    lhs = W @ sum(c * s for c, s in zip(a, SIGMA)) @ W
    rhs = sum(c * s for c, s in zip(g, SIGMA))
    np.testing.assert_allclose(lhs, rhs, atol=1e-15)


@pytest.mark.parametrize("eta,regime", [(0.05, "weak"), (0.166, "weak"), (1.0, "moderate"), (1.4, "strong"), (2.0, "strong")])
def test_regimes(eta, regime):
    assert noise_regime(eta) == regime


def test_weak_flag():
    assert not predict_isotropic(12, 0.01).weak_regime
    assert predict_isotropic(12, 0.01).error_order == pytest.approx(144 * 4096 * 1e-8)
