"""Scale estimators for normal data and a replicated efficiency study.

Compares the IQR-based estimator sigma_tilde = IQR / 1.3489795 against the
usual sample standard deviation across repeated samples at several n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import math

import numpy as np

from . import simkit
from .numerics import SummaryStats, quantile_type7, summarize

# 2 * z_{0.75}: the population IQR of a normal is this many standard deviations
IQR_TO_SIGMA = 1.3489795


@dataclass(frozen=True)
class EstimatorStudyPlan:
    sample_sizes: tuple[int, ...] = (100, 400)
    true_mean: float = 42.0
    true_sd: float = math.pi
    n_reps: int = 1000

    def __post_init__(self):
        if any(n < 4 for n in self.sample_sizes):
            raise ValueError("sample sizes must be >= 4")
        if not self.true_sd > 0:
            raise ValueError("true_sd must be positive")
        if self.n_reps < 2:
            raise ValueError("n_reps must be >= 2")


@dataclass(frozen=True)
class EstimatorStudyResult:
    plan: EstimatorStudyPlan
    root_seed: int
    # keyed by (estimator name, sample size)
    distributions: Mapping[tuple[str, int], np.ndarray]
    summaries: Mapping[tuple[str, int], SummaryStats] = field(default_factory=dict)


def sigma_hat_iqr(sample: Sequence[float]) -> float:
    """IQR-based scale estimate: type-7 interquartile range over 1.3489795."""
    x = np.asarray(sample, dtype=float)
    if x.size < 4:
        raise ValueError("need at least 4 observations")
    return (quantile_type7(x, 0.75) - quantile_type7(x, 0.25)) / IQR_TO_SIGMA


def sigma_hat_s(sample: Sequence[float]) -> float:
    """Sample standard deviation with divisor n-1."""
    x = np.asarray(sample, dtype=float)
    if x.size < 2:
        raise ValueError("need at least 2 observations")
    return float(np.std(x, ddof=1))


def run_estimator_study(
    plan: EstimatorStudyPlan, root_seed: int, n_workers: int = 1
) -> EstimatorStudyResult:
    """Sampling distributions of both estimators at each planned sample size."""
    distributions: dict[tuple[str, int], np.ndarray] = {}
    for n in plan.sample_sizes:

        def one_replicate(stream: simkit.RngStream, i: int, n=n):
            draws = stream.normals(n, plan.true_mean, plan.true_sd)
            return {"iqr": sigma_hat_iqr(draws), "s": sigma_hat_s(draws)}

        study = simkit.run_replicates(
            plan.n_reps, f"estimator-n{n}", root_seed, one_replicate,
            n_workers=n_workers,
        )
        distributions[("iqr", n)] = study.outputs["iqr"]
        distributions[("s", n)] = study.outputs["s"]
    summaries = {key: summarize(vec) for key, vec in distributions.items()}
    return EstimatorStudyResult(
        plan=plan,
        root_seed=int(root_seed),
        distributions=distributions,
        summaries=summaries,
    )
