"""Closed-form weak-noise predictions for the mean measurement probabilities.

The formulas hold at the optimal measurement time to leading order in the
noise, for large N. They are compared against the exact simulator, never
used by it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import rescaled_eta
from .noise import NoiseMoments
from .state import check_index

WEAK_ETA = 0.166
STRONG_ETA = 1.4

# gamma_mu = sum_nu M[mu, nu] alpha_nu, from w sigma_mu w
_SHARED_HARDWARE = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, -1, 0],
        [0, 1, 0, 0],
    ],
    dtype=float,
)


@dataclass(frozen=True)
class PredictedProbabilities:
    P0: float
    P1: float
    Pfar: float
    p1: float  # per first-neighbor state
    p_far: float  # per far state
    error_order: float  # magnitude of the neglected n^2 N eps^4 terms
    weak_regime: bool  # False when eta exceeds the weak-noise edge


def compute_f(m: int, n: int) -> int:
    """Number of zero bits minus number of one bits in the n-bit string m."""
    ones = bin(check_index(m, n)).count("1")
    return n - 2 * ones


def noise_regime(eta: float) -> str:
    if eta < 0:
        raise ValueError("eta must be non-negative")
    if eta <= WEAK_ETA:
        return "weak"
    if eta >= STRONG_ETA:
        return "strong"
    return "moderate"


def predict_isotropic(n: int, epsilon: float) -> PredictedProbabilities:
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    N = 2.0**n
    x = math.pi * n * math.sqrt(N) * epsilon**2
    P1 = x / 2.0
    Pfar = 5.0 / 8.0 * x
    return PredictedProbabilities(
        P0=1.0 - 9.0 / 8.0 * x,
        P1=P1,
        Pfar=Pfar,
        p1=P1 / n,
        p_far=Pfar / N,
        error_order=n**2 * N * epsilon**4,
        weak_regime=rescaled_eta(n, epsilon) <= WEAK_ETA,
    )


def shared_hardware_relations(mean_alpha, cov_alpha) -> tuple[np.ndarray, np.ndarray]:
    """Gamma moments implied when both Hadamard layers share hardware.

    c_k is distributed like w a_k w, and conjugation by w maps
    (sigma_0, sigma_1, sigma_2, sigma_3) to (sigma_0, sigma_3, -sigma_2, sigma_1).
    """
    mean_alpha = np.asarray(mean_alpha, dtype=float)
    cov_alpha = np.asarray(cov_alpha, dtype=float)
    M = _SHARED_HARDWARE
    return M @ mean_alpha, M @ cov_alpha @ M.T


def shared_hardware_moments(mean_alpha, cov_alpha, kind: str = "gaussian") -> NoiseMoments:
    mean_gamma, cov_gamma = shared_hardware_relations(mean_alpha, cov_alpha)
    return NoiseMoments(mean_alpha, mean_gamma, cov_alpha, cov_gamma, kind=kind)


def predict_general(
    moments: NoiseMoments, n: int, m: int, far_count: str = "exact"
) -> PredictedProbabilities:
    """Leading-order probabilities for biased, anisotropic noise.

    ``far_count="exact"`` multiplies the per-state far probability by the
    N - n - 1 far states; ``"asymptotic"`` uses N, which reproduces
    ``predict_isotropic`` exactly for isotropic unbiased noise.
    """
    if far_count not in ("exact", "asymptotic"):
        raise ValueError("far_count must be 'exact' or 'asymptotic'")
    N = 2.0**n
    sqN = math.sqrt(N)
    f = compute_f(m, n)
    ma, mg = moments.mean_alpha, moments.mean_gamma
    va, vg = np.diag(moments.cov_alpha), np.diag(moments.cov_gamma)
    bias = (n * (ma[3] + mg[3]) - f * (ma[1] + mg[1])) ** 2 / 16.0

    p1 = (
        math.pi / 8.0 * sqN * (va[2] + va[3] + vg[2] + vg[3])
        + bias
        + (ma[3] + mg[3]) ** 2
        + (ma[2] + mg[2]) ** 2
    )
    p_far = bias + math.pi / (32.0 * sqN) * (
        n * (5.0 * (va[1] + vg[1]) + 4.0 * (va[2] + vg[2]) + (va[3] + vg[3]))
        + f * (moments.cov_alpha[1, 3] + moments.cov_gamma[1, 3])
    )
    P1 = n * p1
    Pfar = (N - n - 1 if far_count == "exact" else N) * p_far

    spread = max(float(np.max(va[1:])), float(np.max(vg[1:])))
    return PredictedProbabilities(
        P0=1.0 - P1 - Pfar,
        P1=P1,
        Pfar=Pfar,
        p1=p1,
        p_far=p_far,
        error_order=n**2 * N * spread**2,
        weak_regime=rescaled_eta(n, math.sqrt(spread)) <= WEAK_ETA,
    )
