"""Noiseless and noisy Grover iterations and the full search G(T)|0>."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .noise import NoiseDraw, NoiseMoments, first_layer_gates, sample_noise, second_layer_gates, trial_rng
from .state import MAX_QUBITS, StateVector, check_index, check_qubits, hadamard_layer

NORM_TOL = 1e-10


class NumericalError(ArithmeticError):
    """The state norm drifted beyond NORM_TOL."""


def rotation_frequency(n: int) -> float:
    """omega with cos(omega) = 1 - 2/N."""
    N = 1 << check_qubits(n, max_qubits=64)
    return math.acos(1.0 - 2.0 / N)


def optimal_iterations(n: int) -> int:
    """Iteration count T0 that maximizes the noiseless success probability.

    The success probability after T iterations and the closing Hadamard is
    sin^2((2T + 1) omega / 2), which peaks at T = pi/(2 omega) - 1/2; the
    nearest integer to that is floor(pi/(2 omega)).
    """
    return max(1, math.floor(math.pi / (2.0 * rotation_frequency(n))))


def noiseless_success_probability(n: int, T: int) -> float:
    return math.sin((2 * T + 1) * rotation_frequency(n) / 2.0) ** 2


@dataclass
class RunConfig:
    n: int
    marked: int
    iterations: int | str = "optimal"
    noise: NoiseMoments = field(default_factory=NoiseMoments)
    seed: int = 0
    trials: int = 1
    batches: int = 10
    max_qubits: int = MAX_QUBITS

    def __post_init__(self):
        check_qubits(self.n, self.max_qubits)
        check_index(self.marked, self.n)
        if self.iterations != "optimal":
            if not isinstance(self.iterations, (int, np.integer)) or self.iterations < 0:
                raise ValueError(f"iterations must be 'optimal' or a non-negative integer, got {self.iterations!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.batches < 1:
            raise ValueError("batches must be at least 1")

    @property
    def T(self) -> int:
        return optimal_iterations(self.n) if self.iterations == "optimal" else int(self.iterations)


def grover_iteration_noiseless(state: StateVector, m: int) -> StateVector:
    """Q = -I0 W Im W, applied in place."""
    check_index(m, state.n)
    h = hadamard_layer(state.n)
    _kernels.apply_layer(state.amplitudes, h)
    _kernels.oracle_and_layer(state.amplitudes, m, h)
    _kernels.negated_zero_inversion(state.amplitudes)
    return state


def grover_iteration_noisy(state: StateVector, m: int, draw: NoiseDraw) -> StateVector:
    """Q_t = -I0 V_t Im U_t, applied in place."""
    check_index(m, state.n)
    if draw.n != state.n:
        raise ValueError(f"noise draw covers {draw.n} qubits, state has {state.n}")
    _kernels.apply_layer(state.amplitudes, first_layer_gates(draw.alpha.T))
    _kernels.oracle_and_layer(state.amplitudes, m, second_layer_gates(draw.gamma.T))
    _kernels.negated_zero_inversion(state.amplitudes)
    return state


def trial_layers(config: RunConfig, trial: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-qubit gates for one trial.

    Returns ``(u, v)`` with u of shape (T+1, n, 2, 2) holding U_1..U_{T+1}
    and v of shape (T, n, 2, 2) holding V_1..V_T. The gamma block drawn
    alongside U_{T+1} is discarded.
    """
    n, T = config.n, config.T
    if config.noise.is_zero:
        h = hadamard_layer(n)
        return np.broadcast_to(h, (T + 1, n, 2, 2)).copy(), np.broadcast_to(h, (T, n, 2, 2)).copy()
    alpha, gamma = sample_noise(config.noise, n, trial_rng(config.seed, trial), T + 1)
    return first_layer_gates(alpha), second_layer_gates(gamma[:T])


def run_search(config: RunConfig, trial: int = 0) -> StateVector:
    """G(T)|0> = U_{T+1} Q_T ... Q_1 |0> with fresh noise for every call.

    Deterministic in (config.seed, trial). Raises NumericalError when the
    final norm drifts by more than NORM_TOL.
    """
    u, v = trial_layers(config, trial)
    state = StateVector.basis(config.n, 0)
    _kernels.run_iterations(state.amplitudes, config.marked, u, v)
    drift = abs(state.norm_squared() - 1.0)
    if drift > NORM_TOL:
        raise NumericalError(f"norm drift {drift:.3g} exceeds {NORM_TOL:g} (trial {trial})")
    return state
