"""CSV datasets written by the command line tool.

Each file starts with ``#`` comment lines (tool version, the experiment
settings as JSON, seed, scale) followed by a plain CSV table: LF line
endings, '.' decimals, reals printed with 17 significant digits.
"""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .analysis import MonteCarloEstimate, NeighborhoodHistogram
from .experiments import SweepPoint
from .prediction import PredictedProbabilities, noise_regime
from .strategy import StrategyReport

HISTOGRAM_COLUMNS = ("l", "count_states", "p_mean", "p_stderr")
PREDICTION_COLUMNS = ("epsilon", "eta", "P0_pred", "P1_pred", "Pfar_pred", "regime")
SWEEP_COLUMNS = (
    "n", "epsilon", "eta", "trials",
    "P0_sim", "P0_stderr", "P1_sim", "P1_stderr", "Pfar_sim", "Pfar_stderr",
    "P0_pred", "P1_pred", "Pfar_pred", "regime",
)  # fmt: skip
STRATEGY_COLUMNS = ("eta", "l", "Pi_l", "T_tilde_l", "T_l", "exp_T_l")
SUMMARY_COLUMNS = ("eta", "l_opt", "exp_T", "T_classical", "T_grover")
CLASS_COLUMNS = ("eta", "l", "count_states", "p_mean", "p_stderr")
FIG4_COLUMNS = ("eta", "T_classical", "T_grover", "T_hybrid", "l_opt")
TABLE2_COLUMNS = ("eta", "l_opt")


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    return str(x)


def render(columns, rows, meta: dict) -> str:
    buf = io.StringIO()
    for key in ("version", "command", "spec", "seed", "scale"):
        value = meta.get(key)
        value = "" if value is None else value
        if key == "spec":
            value = json.dumps(value, sort_keys=True, separators=(",", ":"))
        buf.write(f"# {key}: {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write(path, columns, rows, meta: dict) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(render(columns, rows, meta))


def histogram_rows(est: MonteCarloEstimate):
    h = est.mean
    for l, count in enumerate(h.counts):
        yield l, count, float(h.p_class[l]), float(est.stderr[l])


def prediction_row(epsilon: float, eta: float, pred: PredictedProbabilities):
    return epsilon, eta, pred.P0, pred.P1, pred.Pfar, noise_regime(eta)


def sweep_rows(points: list[SweepPoint]):
    for p in points:
        e = p.estimate
        yield (
            p.n, p.epsilon, p.eta, e.trials,
            e.mean.P0, e.stderr[0], e.mean.P1, e.stderr[1], e.mean.Pfar, e.far_stderr,
            p.prediction.P0, p.prediction.P1, p.prediction.Pfar, p.regime,
        )  # fmt: skip


def strategy_rows(eta: float, report: StrategyReport):
    for r in report.rows:
        yield eta, r.l, r.Pi, r.T_tilde, r.T, r.expected


def summary_row(eta: float, report: StrategyReport):
    return eta, report.l_opt, report.expected, report.T_classical, report.T_grover


def class_rows(points: list[SweepPoint]):
    for p in points:
        for row in histogram_rows(p.estimate):
            yield (p.eta, *row)


def read_histogram(path) -> NeighborhoodHistogram:
    """Load the class probabilities from a histogram CSV written by ``run``."""
    with open(path, encoding="utf-8") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or not set(HISTOGRAM_COLUMNS) <= set(reader.fieldnames):
        raise ValueError(f"{path}: expected columns {','.join(HISTOGRAM_COLUMNS)}")
    rows = sorted(reader, key=lambda r: int(r["l"]))
    ls = [int(r["l"]) for r in rows]
    if ls != list(range(len(ls))) or not ls:
        raise ValueError(f"{path}: classes must run 0..n without gaps")
    return NeighborhoodHistogram(len(ls) - 1, np.array([float(r["p_mean"]) for r in rows]))
