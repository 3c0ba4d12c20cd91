"""Agreement of the appraisal ranking with traditional metrics, and its
stability when whole metric families are removed.

Metric specs
------------
Columns to compare against are named with a small grammar shared with the
command line:

``M``
    The appraisal score of the breakdown.
``mean:<metric>``
    Per-model mean of ``<metric>`` over every dataset that reports it.
``<dataset>/<metric>``
    A single criterion column.

A bare metric name such as ``MRR`` is rejected as ambiguous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .edas_core import DecisionMatrix, EdasBreakdown, evaluate
from .errors import NoCriteriaLeft, TooFewSamples, UnknownMetric, ZeroVariance

__all__ = [
    "CorrelationReport",
    "AblationReport",
    "pearson",
    "kendall_tau",
    "mean_metric",
    "resolve_spec",
    "correlate",
    "ablate",
    "ablation_table",
]

#: Below this sample size the Kendall p-value is computed exactly (untied data).
KENDALL_EXACT_BELOW = 10


@dataclass(frozen=True)
class CorrelationReport:
    pair_label: str
    pearson_r: float
    pearson_p: float
    kendall_tau: float
    kendall_p: float
    n: int

    def as_dict(self) -> dict:
        return {
            "pair": self.pair_label,
            "pearson_r": self.pearson_r,
            "pearson_p": self.pearson_p,
            "kendall_tau": self.kendall_tau,
            "kendall_p": self.kendall_p,
            "n": self.n,
        }


@dataclass(frozen=True)
class AblationReport:
    removed_metric: str
    original_ranks: dict[str, int]
    new_ranks: dict[str, int]
    max_change: int

    @property
    def changes(self) -> dict[str, int]:
        """Absolute rank shift of every model."""
        return {m: abs(self.new_ranks[m] - r) for m, r in self.original_ranks.items()}


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError(f"x and y must be 1-D of equal length, got {x.shape} and {y.shape}")
    if x.shape[0] < 3:
        raise TooFewSamples(f"need at least 3 paired samples, got {x.shape[0]}")
    return x, y


def pearson(x, y) -> tuple[float, float]:
    """Sample correlation and two-sided p-value.

    The p-value uses ``t = r * sqrt((n - 2) / (1 - r**2))`` against a
    t-distribution with ``n - 2`` degrees of freedom.
    """
    x, y = _pair(x, y)
    n = x.shape[0]
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0 or syy == 0:
        raise ZeroVariance("pearson correlation is undefined for a constant input")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    if abs(r) == 1.0:
        return r, 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    p = float(2.0 * stats.t.sf(abs(t), n - 2))
    return r, min(1.0, p)


def kendall_tau(x, y) -> tuple[float, float]:
    """Kendall tau-b with a two-sided p-value.

    Exact permutation p-value for ``n < 10`` without ties, normal
    approximation (tie-corrected variance) otherwise.
    """
    x, y = _pair(x, y)
    n = x.shape[0]
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise ZeroVariance("kendall tau is undefined for a constant input")
    tied = np.unique(x).size < n or np.unique(y).size < n
    method = "exact" if n < KENDALL_EXACT_BELOW and not tied else "asymptotic"
    res = stats.kendalltau(x, y, variant="b", method=method)
    tau = max(-1.0, min(1.0, float(res.statistic)))
    return tau, min(1.0, float(res.pvalue))


def _criteria_for_metric(matrix: DecisionMatrix, metric: str) -> list[int]:
    return [j for j, c in enumerate(matrix.criteria) if c.metric == metric]


def mean_metric(matrix: DecisionMatrix, metric_name: str) -> dict[str, float]:
    cols = _criteria_for_metric(matrix, metric_name)
    if not cols:
        known = sorted({c.metric for c in matrix.criteria})
        raise UnknownMetric(f"no criterion reports metric {metric_name!r}; known: {', '.join(known)}")
    means = matrix.scores[:, cols].mean(axis=1)
    return {m: float(v) for m, v in zip(matrix.model_names, means)}


def resolve_spec(
    matrix: DecisionMatrix, breakdown: EdasBreakdown | None, spec: str
) -> tuple[str, np.ndarray]:
    """Turn a metric spec into ``(label, per-model values)``.

    Values follow ``matrix.model_names`` order.
    """
    spec = spec.strip()
    if spec == "M":
        if breakdown is None:
            breakdown = evaluate(matrix)
        return "EDAS M", np.asarray(breakdown.appraisal, dtype=float)
    if spec.startswith("mean:"):
        metric = spec[len("mean:"):]
        values = mean_metric(matrix, metric)
        return f"Mean_{metric}", np.array([values[m] for m in matrix.model_names])
    if "/" in spec:
        try:
            j = matrix.criterion_names.index(spec)
        except ValueError:
            raise UnknownMetric(f"no criterion named {spec!r}") from None
        return spec, matrix.scores[:, j].copy()
    raise UnknownMetric(
        f"ambiguous metric spec {spec!r}; use 'mean:{spec}' or '<dataset>/{spec}'"
    )


def correlate(matrix: DecisionMatrix, breakdown: EdasBreakdown, target: str) -> CorrelationReport:
    """Pearson and Kendall agreement of ``M`` with ``target``.

    Cost metrics are not sign-flipped, so MR is expected to come out
    negative.
    """
    if breakdown.model_names != matrix.model_names:
        raise ValueError("breakdown was not computed from this matrix")
    label, y = resolve_spec(matrix, breakdown, target)
    m = np.asarray(breakdown.appraisal, dtype=float)
    r, rp = pearson(m, y)
    tau, tp = kendall_tau(m, y)
    return CorrelationReport(f"EDAS M vs {label}", r, rp, tau, tp, int(m.shape[0]))


def ablate(matrix: DecisionMatrix, metric_name: str | Iterable[str]) -> AblationReport:
    """Drop every criterion of one metric family (or several) and re-rank.

    Remaining criteria get equal weights ``1/m'``.
    """
    if isinstance(metric_name, str):
        removed = [metric_name]
    else:
        removed = list(metric_name)
    known = {c.metric for c in matrix.criteria}
    unknown = [mt for mt in removed if mt not in known]
    if unknown:
        raise UnknownMetric(f"no criterion reports metric(s): {', '.join(unknown)}")
    keep = [j for j, c in enumerate(matrix.criteria) if c.metric not in removed]
    if not keep:
        raise NoCriteriaLeft(f"removing {', '.join(removed)} leaves no criteria")

    before = evaluate(matrix).rank_of()
    after = evaluate(matrix.select_criteria(keep)).rank_of()
    shift = max(abs(after[m] - before[m]) for m in before)
    return AblationReport("+".join(removed), before, after, int(shift))


def ablation_table(matrix: DecisionMatrix, metrics: Sequence[str | Sequence[str]]) -> list[dict]:
    """One row per model: original rank, rank after each removal, max change.

    Rows are in original rank order.
    """
    reports = [ablate(matrix, m) for m in metrics]
    original = evaluate(matrix).rank_of()
    rows = []
    for model in sorted(original, key=original.get):
        row = {"model": model, "Original": original[model]}
        for rep in reports:
            row[rep.removed_metric] = rep.new_ranks[model]
        row["Max Change"] = max((rep.changes[model] for rep in reports), default=0)
        rows.append(row)
    return rows
