"""Command line entry point: ``noisygrover {run,sweep,predict,strategy,reproduce}``.

Settings come from flags or from a JSON file given with ``--config``; flags
win. Exit codes: 0 success, 2 usage or configuration error, 3 numerical
failure (state norm drift).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import __version__, reporting
from .analysis import default_threads, epsilon_from_eta, monte_carlo_average, rescaled_eta
from .engine import NumericalError, RunConfig
from .experiments import SCALES, TABLE2_ETAS, TARGETS, random_marked, strategy_reports, sweep
from .noise import NoiseMoments
from .prediction import predict_general, predict_isotropic
from .strategy import StrategyInputs, optimal_strategy

EXIT_USAGE = 2
EXIT_NUMERIC = 3

DEFAULTS = {
    "trials": 1000,
    "batches": 10,
    "marked": "random",
    "iterations": "optimal",
    "tau_q": 1.0,
    "kind": "gaussian",
}


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_common(p: argparse.ArgumentParser, stochastic: bool = True) -> None:
    p.add_argument("--config", type=Path, help="JSON file with settings; flags override it")
    p.add_argument("--n", type=int, help="number of qubits")
    p.add_argument("--marked", help="marked basis index, or 'random' (drawn from the seed)")
    p.add_argument("--output", "-o", help="output CSV path")
    if stochastic:
        p.add_argument("--seed", type=int, help="master seed (required)")
        p.add_argument("--trials", type=int, help="Monte Carlo trials per point")
        p.add_argument("--batches", type=int, help="batches for the standard error")
        p.add_argument("--threads", type=int, help="worker threads (default from $NOISYGROVER_THREADS or 1)")
        p.add_argument("--kind", choices=["gaussian", "uniform"], help="noise distribution")


def _add_grid(p: argparse.ArgumentParser, single: bool = False) -> None:
    g = p.add_mutually_exclusive_group()
    helptext = "noise standard deviation" if single else "comma-separated noise standard deviations"
    g.add_argument("--epsilon", type=float if single else _floats, help=helptext)
    g.add_argument("--eta", type=float if single else _floats, help="rescaled noise sqrt(n sqrt(N)) * epsilon")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noisygrover", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="Monte Carlo histogram for one noise setting")
    _add_common(p)
    _add_grid(p, single=True)
    p.add_argument("--iterations", help="Grover iterations, or 'optimal'")

    p = sub.add_parser("sweep", help="Monte Carlo over an epsilon or eta grid, with predictions")
    _add_common(p)
    _add_grid(p)

    p = sub.add_parser("predict", help="closed-form predictions over an epsilon or eta grid")
    _add_common(p, stochastic=False)
    _add_grid(p)
    p.add_argument("--model", choices=["isotropic", "general"], default="isotropic")

    p = sub.add_parser("strategy", help="hybrid search times from a histogram file or a simulated eta grid")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--histogram", type=Path, help="histogram CSV written by 'run'")
    p.add_argument("--tau-q", dest="tau_q", type=float, help="cost of one Grover iteration")

    p = sub.add_parser("reproduce", help="datasets behind the figures and Table 2")
    p.add_argument("target", choices=[*TARGETS, "all"])
    p.add_argument("--scale", choices=sorted(SCALES), help="'desk' (default) or 'full'")
    p.add_argument("--seed", type=int, help="master seed (required)")
    p.add_argument("--output-dir", type=Path, default=Path("."), dest="output_dir")
    p.add_argument("--threads", type=int)
    p.add_argument("--trials", type=int, help="override the scale's trial counts")
    p.add_argument("--n", type=int, help="override the register size of fig3/fig4/table2")
    p.add_argument("--config", type=Path)
    return parser


def _settings(args: argparse.Namespace) -> dict:
    settings = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        settings.update(loaded)
    for key, value in vars(args).items():
        if value is not None and key not in ("config", "command"):
            settings[key] = value
    if "epsilon" in settings and "eta" in settings and args.command != "reproduce":
        if not (vars(args).get("epsilon") is not None or vars(args).get("eta") is not None):
            raise UsageError("config gives both epsilon and eta; keep one")
        # a flag for one of them overrides the other from the file
        settings.pop("eta" if vars(args).get("epsilon") is not None else "epsilon")
    return settings


def _require(settings: dict, *keys: str) -> None:
    for key in keys:
        if settings.get(key) is None:
            raise UsageError(f"--{key.replace('_', '-')} is required")


def _marked(settings: dict, n: int) -> int:
    marked = settings["marked"]
    if marked == "random":
        return random_marked(n, settings["seed"] if settings.get("seed") is not None else 0)
    try:
        return int(marked, 0) if isinstance(marked, str) else int(marked)
    except ValueError:
        raise UsageError(f"--marked must be an integer or 'random', got {marked!r}")


def _grid(settings: dict, n: int) -> tuple[list[float], list[float]]:
    """Matching (epsilons, etas) lists from whichever grid was given."""
    if settings.get("epsilon") is not None:
        eps = settings["epsilon"]
        eps = list(eps) if isinstance(eps, (list, tuple)) else [eps]
        return [float(e) for e in eps], [rescaled_eta(n, float(e)) for e in eps]
    if settings.get("eta") is not None:
        etas = settings["eta"]
        etas = list(etas) if isinstance(etas, (list, tuple)) else [etas]
        return [epsilon_from_eta(n, float(h)) for h in etas], [float(h) for h in etas]
    raise UsageError("give --epsilon or --eta")


def _meta(command: str, settings: dict, scale: str = "custom") -> dict:
    spec = {k: v for k, v in settings.items() if k not in ("output", "output_dir", "threads")}
    spec = {k: (str(v) if isinstance(v, Path) else v) for k, v in spec.items()}
    return {"version": __version__, "command": command, "spec": spec, "seed": settings.get("seed"), "scale": scale}


def _threads(settings: dict) -> int:
    return settings.get("threads") or default_threads()


def _noise(settings: dict) -> NoiseMoments:
    if isinstance(settings.get("noise"), dict):
        return NoiseMoments.from_dict(settings["noise"])
    return NoiseMoments.isotropic(_grid(settings, settings["n"])[0][0], kind=settings["kind"])


def cmd_run(settings: dict) -> None:
    _require(settings, "n", "seed")
    n = settings["n"]
    iterations = settings["iterations"]
    if iterations != "optimal":
        iterations = int(iterations)
    trials, batches = int(settings["trials"]), int(settings["batches"])
    if trials < 2 * batches:
        batches = 1  # too few trials for batch statistics; stderr reported as nan
        settings["batches"] = batches
    config = RunConfig(
        n=n, marked=_marked(settings, n), iterations=iterations, noise=_noise(settings),
        seed=settings["seed"], trials=trials, batches=batches,
    )  # fmt: skip
    est = monte_carlo_average(config, _threads(settings))
    out = settings.get("output") or "histogram.csv"
    reporting.write(out, reporting.HISTOGRAM_COLUMNS, reporting.histogram_rows(est), _meta("run", settings))
    print(
        f"n={n} marked={config.marked} T={config.T} trials={trials} "
        f"P0={est.mean.P0:.6f}±{est.stderr[0]:.6f} "
        f"P1={est.mean.P1:.6f}±{est.stderr[1]:.6f} "
        f"Pfar={est.mean.Pfar:.6f}±{est.far_stderr:.6f}"
    )


def cmd_sweep(settings: dict) -> None:
    _require(settings, "n", "seed")
    n = settings["n"]
    epsilons, etas = _grid(settings, n)
    use_eta = settings.get("eta") is not None
    points = sweep(
        n, _marked(settings, n),
        epsilons=None if use_eta else epsilons, etas=etas if use_eta else None,
        trials=int(settings["trials"]), seed=settings["seed"], batches=int(settings["batches"]),
        kind=settings["kind"], threads=_threads(settings),
    )  # fmt: skip
    out = settings.get("output") or "sweep.csv"
    reporting.write(out, reporting.SWEEP_COLUMNS, reporting.sweep_rows(points), _meta("sweep", settings))


def cmd_predict(settings: dict) -> None:
    _require(settings, "n")
    n = settings["n"]
    rows = []
    if isinstance(settings.get("noise"), dict) and "epsilon" not in settings["noise"]:
        moments = NoiseMoments.from_dict(settings["noise"])
        spread = max(moments.cov_alpha.diagonal()[1:].max(), moments.cov_gamma.diagonal()[1:].max())
        eps = math.sqrt(spread)
        pred = predict_general(moments, n, _marked(settings, n))
        rows.append(reporting.prediction_row(eps, rescaled_eta(n, eps), pred))
    else:
        for eps, eta in zip(*_grid(settings, n)):
            if settings.get("model") == "general":
                pred = predict_general(NoiseMoments.isotropic(eps), n, _marked(settings, n))
            else:
                pred = predict_isotropic(n, eps)
            rows.append(reporting.prediction_row(eps, eta, pred))
    out = settings.get("output") or "prediction.csv"
    reporting.write(out, reporting.PREDICTION_COLUMNS, rows, _meta("predict", settings))


def _summary_path(out: str) -> str:
    p = Path(out)
    return str(p.with_name(p.stem + ".summary" + (p.suffix or ".csv")))


def cmd_strategy(settings: dict) -> None:
    tau_q = float(settings["tau_q"])
    if settings.get("histogram"):
        hist = reporting.read_histogram(settings["histogram"])
        labels = [math.nan]
        reports = [optimal_strategy(StrategyInputs(hist.n, hist, tau_q))]
    else:
        _require(settings, "n", "seed")
        n = settings["n"]
        epsilons, etas = _grid(settings, n)
        points = sweep(
            n, _marked(settings, n), epsilons=epsilons, trials=int(settings["trials"]),
            seed=settings["seed"], batches=int(settings["batches"]), kind=settings["kind"],
            threads=_threads(settings),
        )  # fmt: skip
        labels = etas
        reports = strategy_reports(points, tau_q)
    out = settings.get("output") or "strategy.csv"
    meta = _meta("strategy", settings)
    rows = [row for eta, rep in zip(labels, reports) for row in reporting.strategy_rows(eta, rep)]
    reporting.write(out, reporting.STRATEGY_COLUMNS, rows, meta)
    summary = [reporting.summary_row(eta, rep) for eta, rep in zip(labels, reports)]
    reporting.write(_summary_path(out), reporting.SUMMARY_COLUMNS, summary, meta)
    for eta, rep in zip(labels, reports):
        print(f"eta={eta:.4g} l_opt={rep.l_opt} <T>={rep.expected:.6g} T_grover={rep.T_grover:.6g} N/2={rep.T_classical:g}")


def cmd_reproduce(settings: dict) -> None:
    _require(settings, "seed")
    scale_name = settings.get("scale", "desk")
    scale = SCALES[scale_name]
    seed = settings["seed"]
    threads = _threads(settings)
    outdir = Path(settings.get("output_dir") or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    targets = TARGETS if settings["target"] == "all" else (settings["target"],)
    meta = _meta("reproduce", settings, scale_name)
    trials = settings.get("trials")

    def log(point):
        print(f"  n={point.n} eta={point.eta:.4f} P0={point.estimate.mean.P0:.5f}", file=sys.stderr)

    if "fig1" in targets:
        n = scale.fig1_n
        points = sweep(
            n, random_marked(n, seed), epsilons=scale.fig1_epsilons, trials=trials or scale.fig1_trials,
            seed=seed, threads=threads, progress=log,
        )  # fmt: skip
        reporting.write(outdir / "fig1.csv", reporting.SWEEP_COLUMNS, reporting.sweep_rows(points), meta)

    if "fig2" in targets:
        rows = []
        for n in scale.fig2_sizes:
            points = sweep(
                n, random_marked(n, seed), etas=scale.fig2_etas, trials=trials or scale.fig2_trials,
                seed=seed, threads=threads, progress=log,
            )  # fmt: skip
            rows.extend(reporting.sweep_rows(points))
        reporting.write(outdir / "fig2.csv", reporting.SWEEP_COLUMNS, rows, meta)

    if {"fig3", "fig4", "table2"} & set(targets):
        n = settings.get("n") or scale.strategy_n
        points = sweep(
            n, random_marked(n, seed), etas=TABLE2_ETAS, trials=trials or scale.strategy_trials,
            seed=seed, threads=threads, progress=log,
        )  # fmt: skip
        reports = strategy_reports(points, tau_q=1.0)
        if "fig3" in targets:
            reporting.write(outdir / "fig3.csv", reporting.CLASS_COLUMNS, reporting.class_rows(points), meta)
        if "fig4" in targets:
            rows = [(p.eta, r.T_classical, r.T_grover, r.expected, r.l_opt) for p, r in zip(points, reports)]
            reporting.write(outdir / "fig4.csv", reporting.FIG4_COLUMNS, rows, meta)
        if "table2" in targets:
            rows = [(p.eta, r.l_opt) for p, r in zip(points, reports)]
            reporting.write(outdir / "table2.csv", reporting.TABLE2_COLUMNS, rows, meta)


COMMANDS = {
    "run": cmd_run,
    "sweep": cmd_sweep,
    "predict": cmd_predict,
    "strategy": cmd_strategy,
    "reproduce": cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _settings(args)
        COMMANDS[args.command](settings)
    except (UsageError, ValueError, TypeError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"{parser.prog}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


if __name__ == "__main__":
    sys.exit(main())
