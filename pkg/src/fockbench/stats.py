"""Statistical battery over deviation vectors.

Covers the procedures used to establish that the five deviation functionals
sit at stable, component-specific levels across exemplars: per-component
summaries, ordinary least squares on rank-sorted values, Pearson correlation
matrix, paired t-tests (optionally Bonferroni-scaled) and two kinds of
interval bands.  Standard deviations use the n-1 denominator throughout.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from . import special
from .classicality import COMPONENT_KEYS, DeviationVector


class InsufficientDataError(ValueError):
    """Fewer observations than the operation requires."""


class UndefinedCorrelationError(ValueError):
    """A component is constant, so its Pearson correlations are undefined."""

    def __init__(self, component: str) -> None:
        self.component = component
        super().__init__(f"correlation undefined: component {component!r} is constant")


class DegenerateTTestError(ValueError):
    """Paired differences have zero variance but a nonzero mean."""


@dataclass(frozen=True, slots=True)
class RegressionResult:
    """OLS fit of sorted values against rank (x = 1..n)."""

    slope: float
    intercept: float
    r_squared: float
    p_value_slope: float
    degenerate: bool = False


@dataclass(frozen=True, slots=True)
class IntervalBands:
    """Dispersion band (mean +/- 1 std) and 95% CI of the mean."""

    band_1sigma: tuple[float, float]
    ci95_mean: tuple[float, float]


@dataclass(frozen=True)
class StatsReport:
    """Full battery over one collection of deviation vectors.

    ``means``/``stds``/``bands``/``regressions`` are keyed by component
    (A, B, Ap, Bp, ABApBp); ``correlations`` is the 5x5 Pearson matrix in
    that component order; ``ttests`` maps "X_vs_Y" component pairs to
    two-sided paired p-values.
    """

    n: int
    means: dict[str, float]
    stds: dict[str, float]
    bands: dict[str, IntervalBands]
    regressions: dict[str, RegressionResult]
    correlations: tuple[tuple[float, ...], ...]
    ttests: dict[str, float] = field(default_factory=dict)


def _component_matrix(deviations: Sequence[DeviationVector]) -> np.ndarray:
    return np.array([d.as_tuple() for d in deviations], dtype=float)


def summarize(deviations: Sequence[DeviationVector]) -> dict[str, tuple[float, float]]:
    """Per-component (mean, sample std) over a collection of deviation vectors."""
    if len(deviations) < 2:
        raise InsufficientDataError(f"summarize needs n >= 2, got n = {len(deviations)}")
    m = _component_matrix(deviations)
    means = m.mean(axis=0)
    stds = m.std(axis=0, ddof=1)
    return {k: (float(mu), float(sd)) for k, mu, sd in zip(COMPONENT_KEYS, means, stds)}


def sorted_regression(values: Sequence[float]) -> RegressionResult:
    """OLS of values sorted ascending against their rank, 1-based.

    A flat fitted line (slope indistinguishable from 0) is evidence that the
    values sit at one constant level.  Returns slope, intercept, R-squared and
    the two-sided p-value of the slope.  Input order is irrelevant.  For
    zero-variance input the fit is degenerate: slope 0, R-squared defined as
    0, flagged.
    """
    n = len(values)
    if n < 3:
        raise InsufficientDataError(f"sorted_regression needs n >= 3, got n = {n}")
    y = np.sort(np.asarray(values, dtype=float))
    x = np.arange(1, n + 1, dtype=float)
    sxx = float(((x - x.mean()) ** 2).sum())
    sxy = float(((x - x.mean()) * (y - y.mean())).sum())
    syy = float(((y - y.mean()) ** 2).sum())
    if syy == 0.0:
        return RegressionResult(0.0, float(y.mean()), 0.0, 1.0, degenerate=True)
    slope = sxy / sxx
    intercept = float(y.mean()) - slope * float(x.mean())
    sse = syy - slope * sxy
    r_squared = 1.0 - sse / syy
    df = n - 2
    if sse <= 0.0:  # perfect line; slope se is 0
        return RegressionResult(slope, intercept, 1.0, 0.0)
    se = (sse / df / sxx) ** 0.5
    p = special.student_t_two_sided(slope / se, df)
    return RegressionResult(slope, intercept, r_squared, p)


def correlation_matrix(deviations: Sequence[DeviationVector]) -> np.ndarray:
    """5x5 Pearson correlation matrix of the components across exemplars."""
    if len(deviations) < 3:
        raise InsufficientDataError(
            f"correlation_matrix needs n >= 3, got n = {len(deviations)}"
        )
    m = _component_matrix(deviations)
    stds = m.std(axis=0, ddof=1)
    for key, sd in zip(COMPONENT_KEYS, stds):
        if sd == 0.0:
            raise UndefinedCorrelationError(key)
    centered = m - m.mean(axis=0)
    cov = centered.T @ centered / (len(deviations) - 1)
    corr = cov / np.outer(stds, stds)
    np.fill_diagonal(corr, 1.0)
    return corr


def paired_ttest(xs: Sequence[float], ys: Sequence[float], n_comparisons: int = 1) -> float:
    """Two-sided paired t-test p-value; pairing is positional (by exemplar).

    ``n_comparisons > 1`` applies a Bonferroni correction (p scaled by the
    number of comparisons, capped at 1).  Zero-variance differences yield
    exactly 1.0 when the mean difference is 0 and raise
    :class:`DegenerateTTestError` otherwise.
    """
    if len(xs) != len(ys):
        raise ValueError(f"paired samples differ in length: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise InsufficientDataError(f"paired_ttest needs n >= 2, got n = {n}")
    if n_comparisons < 1:
        raise ValueError(f"n_comparisons must be >= 1, got {n_comparisons}")
    d = np.asarray(xs, dtype=float) - np.asarray(ys, dtype=float)
    mean = float(d.mean())
    sd = float(d.std(ddof=1))
    if sd == 0.0:
        if mean == 0.0:
            return 1.0
        raise DegenerateTTestError(
            f"differences are constant at {mean!r}; t statistic is infinite"
        )
    t = mean / (sd / n ** 0.5)
    p = special.student_t_two_sided(t, n - 1)
    return min(1.0, p * n_comparisons)


def interval_bands(deviations: Sequence[DeviationVector]) -> dict[str, IntervalBands]:
    """Per-component dispersion band (mean +/- std) and 95% CI of the mean.

    The two bands answer different questions (where values lie vs where the
    mean lies) and are labeled distinctly wherever they are reported.
    """
    summary = summarize(deviations)
    n = len(deviations)
    tcrit = special.student_t_ppf(0.975, n - 1)
    out = {}
    for key, (mean, sd) in summary.items():
        half = tcrit * sd / n ** 0.5
        out[key] = IntervalBands(
            band_1sigma=(mean - sd, mean + sd),
            ci95_mean=(mean - half, mean + half),
        )
    return out


def ttest_pair_key(a: str, b: str) -> str:
    return f"{a}_vs_{b}"


def build_stats_report(deviations: Sequence[DeviationVector]) -> StatsReport:
    """Assemble the full battery: summaries, bands, regressions, correlations, t-tests."""
    summary = summarize(deviations)
    bands = interval_bands(deviations)
    m = _component_matrix(deviations)
    regressions = {
        key: sorted_regression(m[:, j]) for j, key in enumerate(COMPONENT_KEYS)
    }
    corr = correlation_matrix(deviations)
    ttests = {}
    for i, a in enumerate(COMPONENT_KEYS):
        for j in range(i + 1, len(COMPONENT_KEYS)):
            b = COMPONENT_KEYS[j]
            ttests[ttest_pair_key(a, b)] = paired_ttest(m[:, i], m[:, j])
    return StatsReport(
        n=len(deviations),
        means={k: mu for k, (mu, _) in summary.items()},
        stds={k: sd for k, (_, sd) in summary.items()},
        bands=bands,
        regressions=regressions,
        correlations=tuple(tuple(float(v) for v in row) for row in corr),
        ttests=ttests,
    )
