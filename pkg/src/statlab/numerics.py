"""Shared numerical kernels: quadrature, 1-D minimization, root finding, quantiles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

DEFAULT_QUAD_TOL = 1e-10  # relative
DEFAULT_OPT_TOL = 1e-6
DEFAULT_EVAL_BUDGET = 10**6

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class QuadratureDivergenceError(RuntimeError):
    """Raised when the evaluation budget is exhausted before convergence.

    Carries the partial estimate accumulated so far in ``partial``.
    """

    def __init__(self, message: str, partial: float):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error: float
    evaluations: int


@dataclass(frozen=True)
class SummaryStats:
    n: int
    mean: float
    sd: float
    q1: float
    median: float
    q3: float
    iqr: float
    degenerate: bool = False


def _adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, count, budget, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    count[0] += 2
    if count[0] > budget:
        raise QuadratureDivergenceError(
            "evaluation budget of %d exhausted" % budget, partial=whole
        )
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    err = (left + right - whole) / 15.0
    if depth <= 0 or abs(err) <= tol:
        return left + right + err, abs(err)
    lv, le = _adaptive_simpson(
        f, a, m, fa, flm, fm, left, tol / 2.0, count, budget, depth - 1
    )
    rv, re = _adaptive_simpson(
        f, m, b, fm, frm, fb, right, tol / 2.0, count, budget, depth - 1
    )
    return lv + rv, le + re


def integrate_interval(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_QUAD_TOL,
    budget: int = DEFAULT_EVAL_BUDGET,
) -> QuadratureResult:
    """Adaptive Simpson quadrature of f over the finite interval [a, b].

    ``tol`` is interpreted relative to a coarse first estimate of the
    integral (with an absolute floor, so integrals near zero still converge).
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    count = [0]
    # seed the refinement from a fixed panel grid so a peak narrower than
    # the whole interval cannot be missed by the first coarse estimate
    panels = 16
    edges = np.linspace(a, b, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    f_edges = [f(x) for x in edges]
    f_mids = [f(x) for x in mids]
    count[0] += 2 * panels + 1
    simpsons = [
        (edges[i + 1] - edges[i])
        / 6.0
        * (f_edges[i] + 4.0 * f_mids[i] + f_edges[i + 1])
        for i in range(panels)
    ]
    abs_tol = tol * max(abs(sum(simpsons)), 1e-30)
    value = err = 0.0
    for i in range(panels):
        v, e = _adaptive_simpson(
            f, edges[i], edges[i + 1], f_edges[i], f_mids[i], f_edges[i + 1],
            simpsons[i], abs_tol / panels, count, budget, depth=55,
        )
        value += v
        err += e
    return QuadratureResult(value=value, abs_error=err, evaluations=count[0])


def _integrate_half_line(g, tol, budget):
    # y = t/(1-t) maps [0, 1) onto [0, inf); dy = dt/(1-t)^2
    def transformed(t):
        if t >= 1.0:
            return 0.0
        onemt = 1.0 - t
        val = g(t / onemt)
        return val / (onemt * onemt)

    return integrate_interval(transformed, 0.0, 1.0, tol=tol, budget=budget)


def integrate_real_line(
    g: Callable[[float], float],
    tol: float = DEFAULT_QUAD_TOL,
    even: bool = False,
    budget: int = DEFAULT_EVAL_BUDGET,
) -> QuadratureResult:
    """Integrate g over (-inf, inf) via a variable transformation.

    The half line [0, inf) is mapped onto [0, 1) by y = t/(1-t) and the
    transformed integrand is handled by adaptive Simpson refinement.  When
    the caller declares g even, only the positive half line is integrated
    and the result doubled.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if even:
        half = _integrate_half_line(g, tol, budget)
        return QuadratureResult(
            value=2.0 * half.value,
            abs_error=2.0 * half.abs_error,
            evaluations=half.evaluations,
        )
    pos = _integrate_half_line(g, tol, budget)
    neg = _integrate_half_line(lambda y: g(-y), tol, budget)
    return QuadratureResult(
        value=pos.value + neg.value,
        abs_error=pos.abs_error + neg.abs_error,
        evaluations=pos.evaluations + neg.evaluations,
    )


def minimize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = DEFAULT_OPT_TOL,
) -> tuple[float, float]:
    """Golden-section minimization of a unimodal f on [lo, hi].

    Unimodality is the caller's responsibility; for non-unimodal f the
    result is some local minimizer.  Returns (argmin, f(argmin)).
    """
    if lo >= hi:
        raise ValueError("need lo < hi")
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fcv, fdv = f(c), f(d)
    while b - a > tol:
        if fcv < fdv:
            b, d, fdv = d, c, fcv
            c = b - _INVPHI * (b - a)
            fcv = f(c)
        else:
            a, c, fcv = c, d, fdv
            d = a + _INVPHI * (b - a)
            fdv = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def solve_root(
    h: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = DEFAULT_OPT_TOL,
) -> float:
    """Bisection root of a continuous h with a sign change on [lo, hi]."""
    if lo >= hi:
        raise ValueError("need lo < hi")
    flo, fhi = h(lo), h(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError("h(lo) and h(hi) must bracket a sign change")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fmid = h(mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0:
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def quantile_type7(sample: Sequence[float], p: float) -> float:
    """Order-statistic quantile with linear interpolation at h = (n-1)p + 1."""
    x = np.sort(np.asarray(sample, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("sample must be non-empty")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    h = (n - 1) * p
    i = min(int(math.floor(h)), n - 2) if n > 1 else 0
    frac = h - i
    if n == 1:
        return float(x[0])
    return float(x[i] + frac * (x[i + 1] - x[i]))


def summarize(sample: Sequence[float]) -> SummaryStats:
    """Mean, sd (divisor n-1), and type-7 quartiles of a sample."""
    x = np.asarray(sample, dtype=float)
    n = x.size
    if n == 0:
        raise ValueError("sample must be non-empty")
    degenerate = n == 1
    sd = 0.0 if degenerate else float(np.std(x, ddof=1))
    q1 = quantile_type7(x, 0.25)
    q3 = quantile_type7(x, 0.75)
    return SummaryStats(
        n=int(n),
        mean=float(np.mean(x)),
        sd=sd,
        q1=q1,
        median=quantile_type7(x, 0.5),
        q3=q3,
        iqr=q3 - q1,
        degenerate=degenerate,
    )
