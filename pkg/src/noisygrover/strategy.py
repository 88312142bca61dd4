"""Expected search times for classical, naive quantum and hybrid strategies.

Times are in units of one classical evaluation; one Grover iteration costs
``tau_q`` units. The hybrid strategy of depth l runs the quantum search,
classically scans neighborhood classes 0..l of the measured string, and
starts over if the marked element was not among them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import NeighborhoodHistogram

SUM_TOL = 1e-9


def quantum_time(N: int, tau_q: float) -> float:
    return math.pi / 4.0 * math.sqrt(N) * tau_q


def classical_time(N: int) -> float:
    if N < 1:
        raise ValueError("N must be positive")
    return N / 2.0


def naive_grover_time(N: int, P0: float, tau_q: float) -> float:
    """Repeat quantum search plus one verification until success."""
    if not 0.0 <= P0 <= 1.0:
        raise ValueError(f"P0 must be a probability, got {P0}")
    if P0 == 0.0:
        return math.inf
    return (quantum_time(N, tau_q) + 1.0) / P0


@dataclass
class StrategyInputs:
    n: int
    histogram: NeighborhoodHistogram
    tau_q: float = 1.0

    def __post_init__(self):
        p = np.asarray(self.histogram.p_class, dtype=float)
        if p.shape != (self.n + 1,):
            raise ValueError(f"histogram must have {self.n + 1} classes")
        if abs(p.sum() - 1.0) > SUM_TOL:
            raise ValueError(f"histogram sums to {p.sum()!r}, not 1")
        if self.tau_q < 0:
            raise ValueError("tau_q must be non-negative")

    @property
    def N(self) -> int:
        return 1 << self.n


@dataclass(frozen=True)
class HybridTimes:
    l: int
    Pi: float  # probability the marked element lies in classes 0..l
    T_tilde: float  # cost of one round that misses
    T: float  # mean cost of the successful round
    expected: float  # <T_l>


def hybrid_times(inputs: StrategyInputs, l: int) -> HybridTimes:
    n, p = inputs.n, inputs.histogram.p_class
    if not 0 <= l <= n:
        raise ValueError(f"depth l={l} outside 0..{n}")
    base = quantum_time(inputs.N, inputs.tau_q)
    sizes = [math.comb(n, j) for j in range(l + 1)]
    Pi = float(math.fsum(p[: l + 1]))
    T_tilde = base + sum(sizes)
    if Pi <= 0.0:
        return HybridTimes(l, 0.0, T_tilde, math.inf, math.inf)
    # classes 1..j-1 scanned fully, class j half on average
    scanned = math.fsum(p[j] * (sum(sizes[1:j]) + 0.5 * sizes[j]) for j in range(1, l + 1))
    T = base + 1.0 + scanned / Pi
    expected = T + (1.0 - Pi) / Pi * T_tilde
    return HybridTimes(l, Pi, T_tilde, T, expected)


@dataclass
class StrategyReport:
    rows: list[HybridTimes]
    l_opt: int
    expected: float
    T_classical: float
    T_grover: float


def optimal_strategy(inputs: StrategyInputs) -> StrategyReport:
    """Scan every depth; ties go to the smallest l."""
    rows = [hybrid_times(inputs, l) for l in range(inputs.n + 1)]
    best = min(rows, key=lambda r: r.expected)
    return StrategyReport(
        rows=rows,
        l_opt=best.l,
        expected=best.expected,
        T_classical=classical_time(inputs.N),
        T_grover=naive_grover_time(inputs.N, inputs.histogram.P0, inputs.tau_q),
    )
