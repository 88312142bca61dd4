"""Parameter sweeps and the datasets behind each reproduced figure and table.

Every point of a sweep reuses the same seed, so neighboring noise levels
see the same underlying unit-variance draws scaled by epsilon (common random
numbers). This keeps curves and the derived l_opt column smooth in eta.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import MonteCarloEstimate, epsilon_from_eta, monte_carlo_average, rescaled_eta
from .engine import RunConfig
from .noise import NoiseMoments
from .prediction import PredictedProbabilities, noise_regime, predict_isotropic
from .strategy import StrategyInputs, StrategyReport, optimal_strategy

TABLE2_ETAS = (
    0.0053, 0.138, 0.271, 0.404, 0.537, 0.670, 0.803, 0.936, 1.069,
    1.202, 1.335, 1.468, 1.607, 1.734, 1.867, 2.001, 2.133,
)  # fmt: skip

TARGETS = ("fig1", "fig2", "fig3", "fig4", "table2")


@dataclass(frozen=True)
class Scale:
    fig1_n: int
    fig1_epsilons: tuple[float, ...]
    fig1_trials: int
    fig2_sizes: tuple[int, int]
    fig2_etas: tuple[float, ...]
    fig2_trials: int
    strategy_n: int
    strategy_trials: int


SCALES = {
    "full": Scale(
        fig1_n=12,
        fig1_epsilons=tuple(round(0.0005 * i, 4) for i in range(13)),
        fig1_trials=1000,
        fig2_sizes=(8, 15),
        fig2_etas=tuple(round(0.1 * i, 1) for i in range(26)),
        fig2_trials=200,
        strategy_n=20,
        strategy_trials=300,
    ),
    "desk": Scale(
        fig1_n=12,
        fig1_epsilons=tuple(round(0.001 * i, 3) for i in range(7)),
        fig1_trials=500,
        fig2_sizes=(8, 12),
        fig2_etas=tuple(round(0.2 * i, 1) for i in range(13)),
        fig2_trials=200,
        strategy_n=14,
        strategy_trials=300,
    ),
}


@dataclass
class SweepPoint:
    n: int
    epsilon: float
    eta: float
    estimate: MonteCarloEstimate
    prediction: PredictedProbabilities

    @property
    def regime(self) -> str:
        return noise_regime(self.eta)


def random_marked(n: int, seed: int) -> int:
    return int(np.random.default_rng(int(seed)).integers(1 << n))


def sweep(
    n: int,
    marked: int,
    *,
    epsilons=None,
    etas=None,
    trials: int,
    seed: int,
    batches: int = 10,
    kind: str = "gaussian",
    threads: int | None = None,
    progress=None,
) -> list[SweepPoint]:
    """Monte Carlo estimates over a grid given as epsilons or as etas."""
    if (epsilons is None) == (etas is None):
        raise ValueError("give exactly one of epsilons or etas")
    grid = [float(e) for e in epsilons] if epsilons is not None else [epsilon_from_eta(n, float(h)) for h in etas]
    labels = [rescaled_eta(n, e) for e in grid] if etas is None else [float(h) for h in etas]
    points = []
    for eps, eta in zip(grid, labels):
        config = RunConfig(
            n=n, marked=marked, noise=NoiseMoments.isotropic(eps, kind=kind), seed=seed, trials=trials, batches=batches
        )
        est = monte_carlo_average(config, threads)
        points.append(SweepPoint(n, eps, eta, est, predict_isotropic(n, eps)))
        if progress is not None:
            progress(points[-1])
    return points


def strategy_reports(points: list[SweepPoint], tau_q: float = 1.0) -> list[StrategyReport]:
    return [optimal_strategy(StrategyInputs(p.n, p.estimate.mean, tau_q)) for p in points]


def naive_crossing(etas, grover_times, limit: float) -> float | None:
    """First grid eta at which the naive quantum time exceeds ``limit``."""
    for eta, t in zip(etas, grover_times):
        if t > limit:
            return eta
    return None
