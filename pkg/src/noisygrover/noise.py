"""Stochastic Pauli-coefficient noise on the one-qubit Hadamard gates.

Each noisy Hadamard call on qubit k at iteration t is

    u_k = w exp(i a_k),   a_k = sum_mu alpha_mu sigma_mu     (first layer)
    v_k = exp(i c_k) w,   c_k = sum_mu gamma_mu sigma_mu     (second layer)

with the coefficient vectors (alpha_0..alpha_3) and (gamma_0..gamma_3) drawn
independently for every call from a distribution with fixed mean vector and
4x4 covariance. Index 0 is the identity component (a global phase).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .state import HADAMARD, PAULI

KINDS = ("gaussian", "uniform")
PSD_TOL = 1e-12


def _as_vector(x) -> np.ndarray:
    v = np.array(x, dtype=float).reshape(-1)
    if v.shape != (4,):
        raise ValueError(f"mean vector must have 4 entries, got {v.shape}")
    return v


def _as_covariance(x) -> np.ndarray:
    c = np.array(x, dtype=float)
    if c.shape != (4, 4):
        raise ValueError(f"covariance must be 4x4, got {c.shape}")
    if not np.allclose(c, c.T, rtol=0.0, atol=PSD_TOL):
        raise ValueError("covariance matrix is not symmetric")
    eig = np.linalg.eigvalsh(c)
    if eig.min() < -PSD_TOL * max(1.0, eig.max()):
        raise ValueError(f"covariance matrix is not positive semi-definite (min eigenvalue {eig.min():.3g})")
    return c


def _psd_factor(cov: np.ndarray) -> np.ndarray:
    # L with L @ L.T == cov; eigen-decomposition tolerates singular matrices
    w, v = np.linalg.eigh(cov)
    return v * np.sqrt(np.clip(w, 0.0, None))


@dataclass(frozen=True, eq=False)
class NoiseMoments:
    """First and second moments of the alpha (first layer) and gamma blocks."""

    mean_alpha: np.ndarray = field(default_factory=lambda: np.zeros(4))
    mean_gamma: np.ndarray = field(default_factory=lambda: np.zeros(4))
    cov_alpha: np.ndarray = field(default_factory=lambda: np.zeros((4, 4)))
    cov_gamma: np.ndarray = field(default_factory=lambda: np.zeros((4, 4)))
    kind: str = "gaussian"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}; expected one of {KINDS}")
        for name in ("mean_alpha", "mean_gamma"):
            arr = _as_vector(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        for name in ("cov_alpha", "cov_gamma"):
            arr = _as_covariance(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "_factor_alpha", _psd_factor(self.cov_alpha))
        object.__setattr__(self, "_factor_gamma", _psd_factor(self.cov_gamma))

    @classmethod
    def isotropic(cls, epsilon: float, kind: str = "gaussian", phase: bool = True) -> NoiseMoments:
        """Unbiased noise with variance epsilon**2 on every Pauli coefficient.

        The identity (phase) coefficients get the same variance when ``phase``
        is true; they never change measurement probabilities.
        """
        if not epsilon >= 0:
            raise ValueError(f"epsilon must be non-negative, got {epsilon}")
        diag = np.full(4, float(epsilon) ** 2)
        if not phase:
            diag[0] = 0.0
        cov = np.diag(diag)
        return cls(cov_alpha=cov, cov_gamma=cov, kind=kind)

    @classmethod
    def noiseless(cls) -> NoiseMoments:
        return cls()

    @property
    def is_zero(self) -> bool:
        return not (
            self.mean_alpha.any() or self.mean_gamma.any() or self.cov_alpha.any() or self.cov_gamma.any()
        )

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "mean_alpha": self.mean_alpha.tolist(),
            "mean_gamma": self.mean_gamma.tolist(),
            "cov_alpha": self.cov_alpha.tolist(),
            "cov_gamma": self.cov_gamma.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> NoiseMoments:
        """Build from a config mapping: either ``epsilon`` or explicit moments."""
        kind = d.get("kind", "gaussian")
        if "epsilon" in d:
            extra = set(d) - {"epsilon", "kind", "phase"}
            if extra:
                raise ValueError(f"'epsilon' noise config cannot be combined with {sorted(extra)}")
            return cls.isotropic(float(d["epsilon"]), kind=kind, phase=d.get("phase", True))
        return cls(
            mean_alpha=d.get("mean_alpha", np.zeros(4)),
            mean_gamma=d.get("mean_gamma", np.zeros(4)),
            cov_alpha=d.get("cov_alpha", np.zeros((4, 4))),
            cov_gamma=d.get("cov_gamma", np.zeros((4, 4))),
            kind=kind,
        )


@dataclass(frozen=True, eq=False)
class NoiseDraw:
    """Coefficients for one iteration: ``alpha[mu, k]`` and ``gamma[mu, k]``."""

    alpha: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=float)
        g = np.asarray(self.gamma, dtype=float)
        if a.ndim != 2 or a.shape[0] != 4 or a.shape != g.shape:
            raise ValueError(f"alpha and gamma must both have shape (4, n); got {a.shape} and {g.shape}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "gamma", g)

    @property
    def n(self) -> int:
        return self.alpha.shape[1]

    @classmethod
    def zero(cls, n: int) -> NoiseDraw:
        return cls(np.zeros((4, n)), np.zeros((4, n)))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Random stream owned by one Monte Carlo trial.

    A pure function of (seed, trial), so results do not depend on which
    worker runs the trial or in what order.
    """
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(trial),)))


def _unit_samples(kind: str, rng: np.random.Generator, shape) -> np.ndarray:
    if kind == "gaussian":
        return rng.standard_normal(shape)
    # zero mean, unit variance
    return rng.uniform(-np.sqrt(3.0), np.sqrt(3.0), shape)


def sample_noise(model: NoiseMoments, n: int, rng: np.random.Generator, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``count`` consecutive iterations of noise in one call.

    Returns ``(alpha, gamma)`` each of shape (count, n, 4). The stream is laid
    out iteration-major, then block (alpha before gamma), qubit, Pauli index,
    so drawing all at once equals drawing one iteration at a time.
    """
    z = _unit_samples(model.kind, rng, (count, 2, n, 4))
    alpha = model.mean_alpha + z[:, 0] @ model._factor_alpha.T
    gamma = model.mean_gamma + z[:, 1] @ model._factor_gamma.T
    return alpha, gamma


def sample_iteration_noise(model: NoiseMoments, n: int, rng: np.random.Generator) -> NoiseDraw:
    alpha, gamma = sample_noise(model, n, rng, 1)
    return NoiseDraw(alpha[0].T, gamma[0].T)


def exp_i_pauli_batch(coeffs: np.ndarray) -> np.ndarray:
    """exp(i sum_mu c_mu sigma_mu) for coefficient arrays of shape (..., 4)."""
    c = np.asarray(coeffs, dtype=float)
    r = np.sqrt(c[..., 1] ** 2 + c[..., 2] ** 2 + c[..., 3] ** 2)
    cos_r = np.cos(r)
    sinc_r = np.sinc(r / np.pi)  # sin(r)/r, equal to 1 at r = 0
    x, y, z = (c[..., i] * sinc_r for i in (1, 2, 3))
    out = np.empty(c.shape[:-1] + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = cos_r + 1j * z
    out[..., 0, 1] = 1j * x + y
    out[..., 1, 0] = 1j * x - y
    out[..., 1, 1] = cos_r - 1j * z
    return out * np.exp(1j * c[..., 0])[..., None, None]


def exp_i_pauli(a0: float, a1: float, a2: float, a3: float) -> np.ndarray:
    return exp_i_pauli_batch(np.array([a0, a1, a2, a3], dtype=float))


def first_layer_gates(alpha: np.ndarray) -> np.ndarray:
    """w exp(i a_k) for alpha of shape (..., n, 4)."""
    return HADAMARD @ exp_i_pauli_batch(alpha)


def second_layer_gates(gamma: np.ndarray) -> np.ndarray:
    """exp(i c_k) w for gamma of shape (..., n, 4)."""
    return exp_i_pauli_batch(gamma) @ HADAMARD


def noisy_hadamard_factors(draw: NoiseDraw, k: int) -> tuple[np.ndarray, np.ndarray]:
    if not 0 <= k < draw.n:
        raise ValueError(f"qubit index {k} out of range for a draw over {draw.n} qubits")
    return first_layer_gates(draw.alpha[:, k]), second_layer_gates(draw.gamma[:, k])


__all__ = [
    "NoiseMoments",
    "NoiseDraw",
    "PAULI",
    "exp_i_pauli",
    "exp_i_pauli_batch",
    "first_layer_gates",
    "second_layer_gates",
    "noisy_hadamard_factors",
    "sample_iteration_noise",
    "sample_noise",
    "trial_rng",
]
