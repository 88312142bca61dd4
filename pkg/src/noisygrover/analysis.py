"""Neighborhood-class histograms and Monte Carlo averages over noisy runs."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .engine import RunConfig, run_search
from .state import StateVector, check_index

THREADS_ENV = "NOISYGROVER_THREADS"


@lru_cache(maxsize=32)
def _popcounts(n: int) -> np.ndarray:
    x = np.arange(1 << n, dtype=np.int64)
    counts = np.zeros(1 << n, dtype=np.int64)
    for k in range(n):
        counts += (x >> k) & 1
    counts.flags.writeable = False
    return counts


def distance_classes(n: int, m: int) -> np.ndarray:
    """Hamming distance of every basis index to m."""
    return _popcounts(n)[np.arange(1 << n) ^ m]


def class_sizes(n: int) -> np.ndarray:
    return np.array([math.comb(n, l) for l in range(n + 1)], dtype=float)


@dataclass
class NeighborhoodHistogram:
    """Probability mass per Hamming-distance class l = 0..n around the marked state."""

    n: int
    p_class: np.ndarray

    @property
    def P0(self) -> float:
        return float(self.p_class[0])

    @property
    def P1(self) -> float:
        return float(self.p_class[1]) if self.n >= 1 else 0.0

    @property
    def Pfar(self) -> float:
        return float(np.sum(self.p_class[2:]))

    @property
    def counts(self) -> list[int]:
        return [math.comb(self.n, l) for l in range(self.n + 1)]

    @classmethod
    def binomial(cls, n: int) -> NeighborhoodHistogram:
        return cls(n, class_sizes(n) / float(1 << n))


def classify_probabilities(state: StateVector, m: int) -> NeighborhoodHistogram:
    m = check_index(m, state.n)
    p = np.bincount(distance_classes(state.n, m), weights=state.probabilities(), minlength=state.n + 1)
    return NeighborhoodHistogram(state.n, p)


@dataclass
class MonteCarloEstimate:
    mean: NeighborhoodHistogram
    stderr: np.ndarray
    far_stderr: float
    trials: int
    batches: int
    max_norm_drift: float = 0.0

    @property
    def P0(self) -> tuple[float, float]:
        return self.mean.P0, float(self.stderr[0])

    @property
    def P1(self) -> tuple[float, float]:
        return self.mean.P1, float(self.stderr[1])

    @property
    def Pfar(self) -> tuple[float, float]:
        return self.mean.Pfar, self.far_stderr


def default_threads() -> int:
    value = os.environ.get(THREADS_ENV)
    if value:
        return max(1, int(value))
    return 1


def _trial_rows(config: RunConfig, trials: range) -> tuple[np.ndarray, float]:
    rows = np.empty((len(trials), config.n + 1))
    drift = 0.0
    for i, trial in enumerate(trials):
        state = run_search(config, trial)
        drift = max(drift, abs(state.norm_squared() - 1.0))
        rows[i] = classify_probabilities(state, config.marked).p_class
    return rows, drift


def simulate_trials(config: RunConfig, threads: int | None = None) -> tuple[np.ndarray, float]:
    """Per-trial class probabilities, shape (trials, n+1), in trial order.

    Trials are split into contiguous chunks across ``threads`` workers; the
    compiled kernels release the GIL. Output does not depend on ``threads``.
    """
    threads = default_threads() if threads is None else max(1, int(threads))
    if threads == 1 or config.trials == 1:
        return _trial_rows(config, range(config.trials))
    chunks = [c for c in np.array_split(np.arange(config.trials), threads) if len(c)]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(lambda c: _trial_rows(config, range(int(c[0]), int(c[-1]) + 1)), chunks))
    return np.concatenate([p[0] for p in parts]), max(p[1] for p in parts)


def batch_means_stderr(values: np.ndarray, batches: int) -> np.ndarray:
    """Standard error of the mean from the spread of equal-size batch means.

    ``values`` has trials along axis 0. With one batch the error is not
    estimable and NaN is returned.
    """
    values = np.asarray(values, dtype=float)
    trials = values.shape[0]
    if batches == 1:
        return np.full(values.shape[1:], np.nan)
    if trials < 2 * batches or trials % batches:
        raise ValueError(f"{trials} trials cannot be split into {batches} equal batches of at least 2")
    means = values.reshape((batches, trials // batches) + values.shape[1:]).mean(axis=1)
    return means.std(axis=0, ddof=1) / math.sqrt(batches)


def monte_carlo_average(config: RunConfig, threads: int | None = None) -> MonteCarloEstimate:
    """Average class histograms over ``config.trials`` independent noisy searches."""
    rows, drift = simulate_trials(config, threads)
    mean = rows.mean(axis=0)
    stderr = batch_means_stderr(rows, config.batches)
    far_stderr = float(batch_means_stderr(rows[:, 2:].sum(axis=1)[:, None], config.batches)[0])
    return MonteCarloEstimate(
        NeighborhoodHistogram(config.n, mean), stderr, far_stderr, config.trials, config.batches, drift
    )


def rescaled_eta(n: int, epsilon: float) -> float:
    """eta = sqrt(n sqrt(N)) * epsilon."""
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    return math.sqrt(n * math.sqrt(2.0**n)) * epsilon


def epsilon_from_eta(n: int, eta: float) -> float:
    if eta < 0:
        raise ValueError("eta must be non-negative")
    return eta / math.sqrt(n * math.sqrt(2.0**n))
