"""Report emission: CSV tables, JSON summaries, and SVG figures per subcommand.

Every number written to a table comes straight from an operation in the
library modules; the reporter only formats.  Rerunning with the same
configuration produces byte-identical tables.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, estimators, figures, gof, mh, pooling
from .numerics import quantile_type7


@dataclass
class RunConfig:
    subcommand: str
    root_seed: int
    n_reps: int | None = None
    output_dir: Path = Path("statlab_out")
    emit_figures: bool = False
    options: dict = field(default_factory=dict)
    n_workers: int = 1


@dataclass
class ExperimentReport:
    subcommand: str
    version: str
    root_seed: int
    timestamp: str
    tables: list[str]
    figures: list[str]
    summary: dict
    warnings: list[str] = field(default_factory=list)


def _num(x) -> str:
    """Table cell format: 10 significant digits, '.' decimal."""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.10g}"


def write_table(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_num(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _dist_quartiles(vec: np.ndarray) -> dict:
    return {
        "lo": float(vec.min()),
        "q1": quantile_type7(vec, 0.25),
        "median": quantile_type7(vec, 0.5),
        "q3": quantile_type7(vec, 0.75),
        "hi": float(vec.max()),
    }


def run_pooling(config: RunConfig, out: Path):
    opts = config.options
    p = float(opts.get("p", 0.05))
    N = int(opts.get("N", 5000))
    k_lo, k_hi = opts.get("k_range", (2, 10))
    n_reps = config.n_reps or 1000

    candidates = [k for k in range(int(k_lo), int(k_hi) + 1) if N % k == 0]
    best_k, best_cost = pooling.optimal_pool_size_integer(N, p, candidates)
    cont = pooling.optimal_pool_size_continuous(p)
    k_root = pooling.optimal_pool_size_root(p)

    rows = []
    for k in candidates:
        n = N // k
        design = pooling.PoolingDesign(N=N, k=k, n=n, p=p)
        cost = pooling.simulate_pooling(
            design, n_reps, config.root_seed, experiment_id=f"pooling-k{k}",
            n_workers=config.n_workers,
        )
        rows.append(
            (k, n, cost.expected_tests_analytic, cost.simulated_mean,
             cost.simulated_sd, cost.savings_ratio)
        )
    tables, figs = [], []
    t1 = out / "pooling_candidates.csv"
    write_table(
        t1,
        ["k", "n_pools", "expected_tests_analytic", "simulated_mean",
         "simulated_sd", "savings_ratio"],
        rows,
    )
    tables.append(t1.name)

    ks, costs = pooling.cost_curve(N, p, float(k_lo), float(k_hi))
    t2 = out / "pooling_cost_curve.csv"
    write_table(t2, ["k", "expected_tests"], zip(ks, costs))
    tables.append(t2.name)

    if config.emit_figures:
        fig = out / "pooling_cost_curve.svg"
        fig.write_text(
            figures.line_chart(
                [("expected tests", list(ks), list(costs))],
                title=f"Expected tests vs pool size (N={N}, p={p})",
                xlabel="pool size k",
                ylabel="expected number of tests",
            )
        )
        figs.append(fig.name)

    summary = {
        "p": p,
        "N": N,
        "n_reps": n_reps,
        "best_integer_k": best_k,
        "best_integer_expected_tests": best_cost,
        "continuous_optimum_k": cont.k,
        "continuous_optimum_at_boundary": cont.at_boundary,
        "bisection_cross_check_k": k_root,
        "savings_ratio_at_best_k": pooling.savings_ratio(best_k, p),
    }
    return tables, figs, summary, []


def run_mh(config: RunConfig, out: Path):
    opts = config.options
    mh_config = mh.MhConfig(
        proposal_sd=float(opts.get("proposal_sd", 1.0)),
        burn_in=int(opts.get("burn_in", 100_000)),
        n_samples=int(opts.get("samples", 100_000)),
    )
    warnings = []
    defaults = mh.MhConfig()
    if (mh_config.burn_in < defaults.burn_in
            or mh_config.n_samples < defaults.n_samples):
        warnings.append(
            "short chain: burn-in and/or sample count below the defaults "
            f"({defaults.burn_in}/{defaults.n_samples}); results may be noisy"
        )

    density = mh.TargetDensity()
    c = density.normalize()
    result = mh.run_chain(mh_config, config.root_seed)
    distance = mh.density_distance(result.samples, density)

    counts, edges = np.histogram(result.samples, bins=40, range=(-3.0, 3.0))
    width = edges[1] - edges[0]
    empirical = counts / (result.samples.size * width)
    true_avg = mh.binned_true_density(density, edges)

    tables, figs = [], []
    t1 = out / "mh_histogram.csv"
    write_table(
        t1,
        ["bin_lo", "bin_hi", "empirical_density", "true_density_bin_avg"],
        zip(edges[:-1], edges[1:], empirical, true_avg),
    )
    tables.append(t1.name)

    grid = np.linspace(-3.0, 3.0, 201)
    t2 = out / "mh_true_density.csv"
    write_table(t2, ["y", "pdf"], ((y, density.pdf(y)) for y in grid))
    tables.append(t2.name)

    if config.emit_figures:
        fig = out / "mh_density.svg"
        fig.write_text(
            figures.histogram_chart(
                list(edges),
                list(empirical),
                overlay=("true density", list(grid),
                         [density.pdf(y) for y in grid]),
                title="Metropolis-Hastings samples vs true density",
                xlabel="y",
            )
        )
        figs.append(fig.name)

    summary = {
        "normalizing_constant": c,
        "proposal_sd": mh_config.proposal_sd,
        "burn_in": mh_config.burn_in,
        "n_samples": mh_config.n_samples,
        "acceptance_rate": result.acceptance_rate,
        "sample_mean": float(result.samples.mean()),
        "sample_variance": float(result.samples.var()),
        "target_variance_quadrature": density.second_moment(),
        "density_distance": distance,
    }
    return tables, figs, summary, warnings


def run_estimator(config: RunConfig, out: Path):
    opts = config.options
    plan = estimators.EstimatorStudyPlan(
        sample_sizes=tuple(opts.get("sizes", (100, 400))),
        true_sd=float(opts.get("sigma", math.pi)),
        n_reps=config.n_reps or 1000,
    )
    result = estimators.run_estimator_study(plan, config.root_seed,
                                            n_workers=config.n_workers)

    tables, figs = [], []
    t1 = out / "estimator_distributions.csv"
    rows = []
    for (name, n), vec in result.distributions.items():
        rows.extend((name, n, i, v) for i, v in enumerate(vec))
    write_table(t1, ["estimator", "n", "replicate", "estimate"], rows)
    tables.append(t1.name)

    t2 = out / "estimator_summary.csv"
    write_table(
        t2,
        ["estimator", "n", "mean", "sd", "q1", "median", "q3", "iqr"],
        (
            (name, n, s.mean, s.sd, s.q1, s.median, s.q3, s.iqr)
            for (name, n), s in result.summaries.items()
        ),
    )
    tables.append(t2.name)

    if config.emit_figures:
        groups = [
            (f"{name} (n={n})", _dist_quartiles(vec))
            for (name, n), vec in result.distributions.items()
        ]
        fig = out / "estimator_box.svg"
        fig.write_text(
            figures.box_chart(
                groups,
                title="Sampling distributions of the scale estimators",
                ylabel="estimate of sigma",
                reference=plan.true_sd,
            )
        )
        figs.append(fig.name)

    summary = {
        "true_sd": plan.true_sd,
        "n_reps": plan.n_reps,
        "iqr_of_distribution": {
            f"{name}_n{n}": s.iqr for (name, n), s in result.summaries.items()
        },
    }
    return tables, figs, summary, []


def run_gof(config: RunConfig, out: Path):
    opts = config.options
    plan = gof.GofPlan(
        bins=int(opts.get("bins", 8)),
        sample_sizes=tuple(opts.get("sizes", (16, 64))),
        n_reps=config.n_reps or 10_000,
    )
    result = gof.simulate_uniform_gof(plan, config.root_seed,
                                      n_workers=config.n_workers)

    tables, figs = [], []
    t1 = out / "gof_statistics.csv"
    rows = []
    for n, vec in result.statistics.items():
        rows.extend((n, i, v) for i, v in enumerate(vec))
    write_table(t1, ["n", "replicate", "statistic"], rows)
    tables.append(t1.name)

    edges = np.linspace(0.0, 20.0, 41)
    ref_avg = gof.binned_chisq_density(result.df, edges)
    distances = {}
    for n, vec in result.statistics.items():
        counts, _ = np.histogram(vec, bins=40, range=(0.0, 20.0))
        empirical = counts / (vec.size * 0.5)
        t = out / f"gof_overlay_n{n}.csv"
        write_table(
            t,
            ["bin_lo", "bin_hi", "empirical_density", "chisq_density_bin_avg"],
            zip(edges[:-1], edges[1:], empirical, ref_avg),
        )
        tables.append(t.name)
        distances[n] = gof.shape_distance(vec, result.df)
        if config.emit_figures:
            fig = out / f"gof_overlay_n{n}.svg"
            grid = np.linspace(0.0, 20.0, 201)
            fig.write_text(
                figures.histogram_chart(
                    list(edges),
                    list(empirical),
                    overlay=(
                        f"chi-square df={result.df}",
                        list(grid),
                        [gof.chisq_density(x, result.df) for x in grid],
                    ),
                    title=f"Null distribution of the Pearson statistic (n={n})",
                    xlabel="statistic",
                )
            )
            figs.append(fig.name)

    summary = {
        "bins": plan.bins,
        "df": result.df,
        "n_reps": plan.n_reps,
        "mean_statistic": result.means,
        "shape_distance": distances,
    }
    return tables, figs, summary, []


_RUNNERS = {
    "pooling": run_pooling,
    "mh": run_mh,
    "estimator": run_estimator,
    "gof": run_gof,
}


def run_and_report(config: RunConfig) -> list[ExperimentReport]:
    """Run the configured subcommand(s) and write tables/figures/summaries."""
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    probe = out / ".writable"
    try:
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise OSError(f"output directory {out} is not writable: {exc}") from exc

    names = list(_RUNNERS) if config.subcommand == "all" else [config.subcommand]
    reports = []
    for name in names:
        tables, figs, summary, warnings = _RUNNERS[name](config, out)
        report = ExperimentReport(
            subcommand=name,
            version=__version__,
            root_seed=config.root_seed,
            timestamp=datetime.now(timezone.utc).isoformat(),
            tables=tables,
            figures=figs,
            summary=summary,
            warnings=warnings,
        )
        doc = {
            "tool": "statlab",
            "version": report.version,
            "subcommand": name,
            "root_seed": report.root_seed,
            "timestamp": report.timestamp,
            "tables": tables,
            "figures": figs,
            "warnings": warnings,
            "summary": summary,
        }
        (out / f"{name}_summary.json").write_text(
            json.dumps(doc, indent=2, sort_keys=True) + "\n"
        )
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)
        reports.append(report)
    return reports
