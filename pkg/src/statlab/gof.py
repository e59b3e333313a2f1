"""Null-distribution study of the Pearson chi-square statistic for uniform data.

Simulates the statistic for small samples (expected cell counts of 2 and 8)
and quantifies how far its distribution sits from the chi-square reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import simkit
from .numerics import integrate_interval


@dataclass(frozen=True)
class GofPlan:
    bins: int = 8
    sample_sizes: tuple[int, ...] = (16, 64)
    n_reps: int = 10_000

    def __post_init__(self):
        if self.bins < 2:
            raise ValueError("need at least 2 bins")
        for n in self.sample_sizes:
            if n < self.bins or n % self.bins != 0:
                raise ValueError(
                    f"sample size {n} must be a multiple of bins={self.bins}"
                )
        if self.n_reps < 1:
            raise ValueError("n_reps must be >= 1")


@dataclass(frozen=True)
class GofResult:
    plan: GofPlan
    root_seed: int
    df: int
    statistics: Mapping[int, np.ndarray]  # keyed by sample size
    means: Mapping[int, float] = field(default_factory=dict)


def pearson_statistic(observed: Sequence[float], expected: Sequence[float]) -> float:
    """Sum of (O - E)^2 / E over cells."""
    obs = np.asarray(observed, dtype=float)
    exp = np.asarray(expected, dtype=float)
    if obs.shape != exp.shape:
        raise ValueError("observed and expected must have equal length")
    if np.any(exp <= 0):
        raise ValueError("expected counts must all be positive")
    if abs(obs.sum() - exp.sum()) > 1e-9:
        raise ValueError("observed and expected totals must match")
    return float(np.sum((obs - exp) ** 2 / exp))


def bin_uniform(draws: Sequence[float], bins: int) -> np.ndarray:
    """Counts of draws on (0, bins) in unit-width half-open bins (j-1, j]."""
    u = np.asarray(draws, dtype=float)
    # ceil maps (j-1, j] to bin j; boundary hits go to the lower bin
    idx = np.ceil(u).astype(int)
    idx = np.clip(idx, 1, bins)
    return np.bincount(idx - 1, minlength=bins).astype(np.int64)


def simulate_uniform_gof(
    plan: GofPlan, root_seed: int, n_workers: int = 1
) -> GofResult:
    """Null distribution of the Pearson statistic for each planned sample size."""
    statistics: dict[int, np.ndarray] = {}
    for n in plan.sample_sizes:
        expected = np.full(plan.bins, n / plan.bins)

        def one_replicate(stream: simkit.RngStream, i: int, n=n, expected=expected):
            draws = stream.uniforms(n, 0.0, plan.bins)
            return pearson_statistic(bin_uniform(draws, plan.bins), expected)

        study = simkit.run_replicates(
            plan.n_reps, f"gof-n{n}", root_seed, one_replicate, n_workers=n_workers
        )
        statistics[n] = study.outputs["value"]
    means = {n: float(v.mean()) for n, v in statistics.items()}
    return GofResult(
        plan=plan,
        root_seed=int(root_seed),
        df=plan.bins - 1,
        statistics=statistics,
        means=means,
    )


def chisq_density(x: float, df: int) -> float:
    """Chi-square density x^(df/2-1) e^(-x/2) / (2^(df/2) Gamma(df/2))."""
    if df < 1:
        raise ValueError("df must be >= 1")
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0.0:
        if df == 2:
            return 0.5
        return math.inf if df == 1 else 0.0
    half = df / 2.0
    return math.exp((half - 1.0) * math.log(x) - x / 2.0
                    - half * math.log(2.0) - math.lgamma(half))


def binned_chisq_density(df: int, edges: np.ndarray) -> np.ndarray:
    """Average chi-square density over each comparison bin."""
    avgs = np.empty(len(edges) - 1)
    for j in range(len(edges) - 1):
        a, b = edges[j], edges[j + 1]
        res = integrate_interval(lambda x: chisq_density(x, df), a, b, tol=1e-9)
        avgs[j] = res.value / (b - a)
    return avgs


def shape_distance(
    statistics: Sequence[float],
    df: int,
    comparison_bins: int = 40,
    hi: float = 20.0,
) -> float:
    """Sup over comparison bins of |empirical density - bin-averaged chi-square|.

    Comparison window is [0, hi] split into equal bins; statistics beyond hi
    count in the denominator but not in any bin.
    """
    stats = np.asarray(statistics, dtype=float)
    if stats.size == 0:
        raise ValueError("statistics must be non-empty")
    counts, edges = np.histogram(stats, bins=comparison_bins, range=(0.0, hi))
    width = hi / comparison_bins
    empirical = counts / (stats.size * width)
    return float(np.max(np.abs(empirical - binned_chisq_density(df, edges))))
