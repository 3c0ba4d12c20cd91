"""Distance-from-average-solution scoring of a model x criterion matrix.

The pipeline runs in seven vectorised steps, each exposed on its own so
intermediate quantities can be inspected or tested in isolation:

1. :func:`column_averages` -- per-criterion mean over models.
2. :func:`distances` -- positive / negative distance from that mean,
   relative to the mean, with the roles swapped for cost criteria.
3. :func:`weighted_sums` -- criterion-weighted row sums of both grids.
4. :func:`normalize` -- divide each sum vector by its maximum.
5. :func:`appraisal_scores` -- ``M = (NWPDA + 1 - NWNDA) / 2``.
6. :func:`rank` -- stable descending sort of ``M``.
7. :func:`evaluate` -- all of the above, returned as an
   :class:`EdasBreakdown`.

Every step is O(n*m) or better; the ranking sort is O(n log n).

Examples
--------
>>> m = DecisionMatrix.from_arrays(
...     [[0.5, 100.0], [0.3, 300.0]], criterion_names=["MRR", "MR"],
...     directions=["benefit", "cost"], model_names=["A", "B"])
>>> evaluate(m).ranks.tolist()
[1, 2]
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidMatrix, ZeroAverageColumn

__all__ = [
    "Direction",
    "Criterion",
    "DecisionMatrix",
    "EdasBreakdown",
    "ZERO_GUARD",
    "column_averages",
    "distances",
    "weighted_sums",
    "normalize",
    "appraisal_scores",
    "rank",
    "evaluate",
]

#: Denominator substituted for an all-zero column average when the guard is on.
ZERO_GUARD = 1e-12

_WEIGHT_SUM_WARN = 1e-6
# below this the sum is treated as one, so repeated construction is idempotent
_WEIGHT_SUM_EXACT = 1e-12


class Direction(enum.Enum):
    BENEFIT = "benefit"
    COST = "cost"

    @classmethod
    def parse(cls, value: "Direction | str") -> "Direction":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(
                f"direction must be 'benefit' or 'cost', got {value!r}"
            ) from None


@dataclass(frozen=True)
class Criterion:
    """One evaluation axis, e.g. ``"FB15k-237/MRR"``.

    The ``dataset/metric`` naming is a convention used by the ingest and
    analysis layers; the core pipeline treats the name as opaque.
    """

    name: str
    direction: Direction = Direction.BENEFIT
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "direction", Direction.parse(self.direction))
        w = float(self.weight)
        if not np.isfinite(w) or w < 0:
            raise InvalidMatrix(f"criterion {self.name!r}: weight must be finite and >= 0, got {w}")
        object.__setattr__(self, "weight", w)

    @property
    def is_cost(self) -> bool:
        return self.direction is Direction.COST

    @property
    def dataset(self) -> str | None:
        return self.name.rsplit("/", 1)[0] if "/" in self.name else None

    @property
    def metric(self) -> str:
        return self.name.rsplit("/", 1)[-1]


@dataclass(frozen=True, eq=False)
class DecisionMatrix:
    """Scores of ``n`` models on ``m`` criteria.

    Weights are renormalised to sum to one on construction; a warning is
    issued when the supplied weights were off by more than 1e-6.

    ``imputed`` optionally flags cells that were filled with the column
    average during ingestion. Those cells are pinned to zero distance.
    """

    model_names: tuple[str, ...]
    criteria: tuple[Criterion, ...]
    scores: np.ndarray
    imputed: np.ndarray | None = field(default=None)

    def __post_init__(self):
        names = tuple(str(n) for n in self.model_names)
        crit = tuple(self.criteria)
        x = np.array(self.scores, dtype=float)
        if x.ndim != 2:
            raise DimensionMismatch(f"scores must be 2-D, got shape {x.shape}")
        n, m = x.shape
        if n < 1 or m < 1:
            raise InvalidMatrix(f"need at least one model and one criterion, got shape {x.shape}")
        if len(names) != n or len(crit) != m:
            raise DimensionMismatch(
                f"scores are {n}x{m} but got {len(names)} model names and {len(crit)} criteria"
            )
        _require_unique(names, "model name")
        _require_unique([c.name for c in crit], "criterion name")
        bad = ~np.isfinite(x)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise InvalidMatrix(f"non-finite score for {names[i]!r} on {crit[j].name!r}")
        if (x < 0).any():
            i, j = np.argwhere(x < 0)[0]
            raise InvalidMatrix(
                f"negative score {x[i, j]} for {names[i]!r} on {crit[j].name!r}"
            )

        total = sum(c.weight for c in crit)
        if total <= 0:
            raise InvalidMatrix("criterion weights sum to zero")
        if abs(total - 1.0) > _WEIGHT_SUM_WARN:
            warnings.warn(
                f"criterion weights sum to {total:.6g}; renormalising to 1",
                stacklevel=3,
            )
        if abs(total - 1.0) > _WEIGHT_SUM_EXACT:
            crit = tuple(Criterion(c.name, c.direction, c.weight / total) for c in crit)

        mask = None
        if self.imputed is not None:
            mask = np.array(self.imputed, dtype=bool)
            if mask.shape != x.shape:
                raise DimensionMismatch(f"imputed mask shape {mask.shape} != scores shape {x.shape}")
            mask.setflags(write=False)
        x.setflags(write=False)

        object.__setattr__(self, "model_names", names)
        object.__setattr__(self, "criteria", crit)
        object.__setattr__(self, "scores", x)
        object.__setattr__(self, "imputed", mask)

    @classmethod
    def from_arrays(
        cls,
        scores,
        criterion_names: Sequence[str] | None = None,
        directions: Sequence[Direction | str] | None = None,
        weights: Sequence[float] | None = None,
        model_names: Sequence[str] | None = None,
    ) -> "DecisionMatrix":
        """Build a matrix from plain arrays; weights default to ``1/m``."""
        x = np.asarray(scores, dtype=float)
        if x.ndim != 2:
            raise DimensionMismatch(f"scores must be 2-D, got shape {x.shape}")
        n, m = x.shape
        if criterion_names is None:
            criterion_names = [f"c{j}" for j in range(m)]
        if model_names is None:
            model_names = [f"model{i}" for i in range(n)]
        if directions is None:
            directions = [Direction.BENEFIT] * m
        if weights is None:
            weights = [1.0 / m] * m if m else []
        if not (len(criterion_names) == len(directions) == len(weights) == m):
            raise DimensionMismatch("criterion names, directions and weights must all have length m")
        crit = tuple(
            Criterion(c, Direction.parse(d), w)
            for c, d, w in zip(criterion_names, directions, weights)
        )
        return cls(tuple(model_names), crit, x)

    @property
    def shape(self) -> tuple[int, int]:
        return self.scores.shape

    @property
    def criterion_names(self) -> list[str]:
        return [c.name for c in self.criteria]

    @property
    def weights(self) -> np.ndarray:
        return np.array([c.weight for c in self.criteria])

    @property
    def cost_mask(self) -> np.ndarray:
        return np.array([c.is_cost for c in self.criteria])

    def select_criteria(self, keep: Sequence[int]) -> "DecisionMatrix":
        """Sub-matrix on the given column indices, with equal weights."""
        keep = list(keep)
        m = len(keep)
        crit = tuple(
            Criterion(self.criteria[j].name, self.criteria[j].direction, 1.0 / m) for j in keep
        )
        imputed = None if self.imputed is None else self.imputed[:, keep]
        return DecisionMatrix(self.model_names, crit, self.scores[:, keep], imputed)

    def select_models(self, names: Sequence[str]) -> "DecisionMatrix":
        index = {n: i for i, n in enumerate(self.model_names)}
        rows = [index[n] for n in names]
        imputed = None if self.imputed is None else self.imputed[rows]
        return DecisionMatrix(tuple(names), self.criteria, self.scores[rows], imputed)


@dataclass(frozen=True, eq=False)
class EdasBreakdown:
    """Every intermediate quantity of one :func:`evaluate` run."""

    model_names: tuple[str, ...]
    averages: np.ndarray
    pda: np.ndarray
    nda: np.ndarray
    wpda: np.ndarray
    wnda: np.ndarray
    nwpda: np.ndarray
    nwnda: np.ndarray
    appraisal: np.ndarray
    ranks: np.ndarray

    def order(self) -> list[int]:
        """Row indices from rank 1 downwards."""
        return list(np.argsort(self.ranks, kind="stable"))

    def rank_of(self) -> dict[str, int]:
        return {n: int(r) for n, r in zip(self.model_names, self.ranks)}

    def rows(self) -> list[dict]:
        """Per-model summary rows in rank order (WPDA_sum ... Rank)."""
        out = []
        for i in self.order():
            out.append(
                {
                    "model": self.model_names[i],
                    "WPDA_sum": float(self.wpda[i]),
                    "WNDA_sum": float(self.wnda[i]),
                    "NWPDA": float(self.nwpda[i]),
                    "NWNDA": float(self.nwnda[i]),
                    "M": float(self.appraisal[i]),
                    "Rank": int(self.ranks[i]),
                }
            )
        return out


def _require_unique(items, what):
    seen = set()
    for it in items:
        if it in seen:
            raise InvalidMatrix(f"duplicate {what}: {it!r}")
        seen.add(it)


def column_averages(matrix: DecisionMatrix) -> np.ndarray:
    x = matrix.scores
    # a float mean of identical values can land an ulp away from them
    return np.where(np.ptp(x, axis=0) == 0, x[0], x.mean(axis=0))


def distances(
    matrix: DecisionMatrix, averages, guard: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Positive and negative distance of every cell from its column average.

    Parameters
    ----------
    matrix : DecisionMatrix
    averages : array_like, shape (m,)
        Column averages, normally from :func:`column_averages`.
    guard : bool
        If true, a zero average is replaced by :data:`ZERO_GUARD` in the
        denominator. If false, :class:`ZeroAverageColumn` is raised.

    Returns
    -------
    pda, nda : ndarray, shape (n, m)
        Non-negative grids; at most one of ``pda[i, j]`` and ``nda[i, j]``
        is nonzero.
    """
    avg = np.asarray(averages, dtype=float)
    m = matrix.shape[1]
    if avg.shape != (m,):
        raise DimensionMismatch(f"averages has shape {avg.shape}, expected ({m},)")
    zero = avg == 0
    if zero.any():
        if not guard:
            j = int(np.flatnonzero(zero)[0])
            raise ZeroAverageColumn(f"criterion {matrix.criteria[j].name!r} averages to zero")
        denom = np.where(zero, ZERO_GUARD, avg)
    else:
        denom = avg

    above = np.maximum(0.0, matrix.scores - avg) / denom
    below = np.maximum(0.0, avg - matrix.scores) / denom
    cost = matrix.cost_mask
    pda = np.where(cost, below, above)
    nda = np.where(cost, above, below)
    if matrix.imputed is not None:
        pda[matrix.imputed] = 0.0
        nda[matrix.imputed] = 0.0
    return pda, nda


def weighted_sums(pda, nda, criteria: Sequence[Criterion]) -> tuple[np.ndarray, np.ndarray]:
    pda = np.asarray(pda, dtype=float)
    nda = np.asarray(nda, dtype=float)
    if pda.ndim != 2 or pda.shape != nda.shape:
        raise DimensionMismatch(f"pda {pda.shape} and nda {nda.shape} must be equal 2-D shapes")
    if pda.shape[1] != len(criteria):
        raise DimensionMismatch(f"{pda.shape[1]} columns but {len(criteria)} criteria")
    w = np.array([c.weight for c in criteria], dtype=float)
    return pda @ w, nda @ w


def _max_normalize(v: np.ndarray) -> np.ndarray:
    top = v.max() if v.size else 0.0
    if top <= 0:
        return np.zeros_like(v)
    return v / top


def normalize(wpda, wnda) -> tuple[np.ndarray, np.ndarray]:
    """Scale each vector by its own maximum; an all-zero vector stays zero."""
    wpda = np.asarray(wpda, dtype=float)
    wnda = np.asarray(wnda, dtype=float)
    if wpda.shape != wnda.shape:
        raise DimensionMismatch(f"wpda {wpda.shape} and wnda {wnda.shape} differ")
    return _max_normalize(wpda), _max_normalize(wnda)


def appraisal_scores(nwpda, nwnda) -> np.ndarray:
    nwpda = np.asarray(nwpda, dtype=float)
    nwnda = np.asarray(nwnda, dtype=float)
    return 0.5 * (nwpda + (1.0 - nwnda))


def rank(appraisal) -> np.ndarray:
    """1-based descending ranks; ties keep input order."""
    a = np.asarray(appraisal, dtype=float)
    order = np.argsort(-a, kind="stable")
    ranks = np.empty(a.shape[0], dtype=int)
    ranks[order] = np.arange(1, a.shape[0] + 1)
    return ranks


def evaluate(matrix: DecisionMatrix, guard: bool = True) -> EdasBreakdown:
    avg = column_averages(matrix)
    pda, nda = distances(matrix, avg, guard=guard)
    wpda, wnda = weighted_sums(pda, nda, matrix.criteria)
    nwpda, nwnda = normalize(wpda, wnda)
    m = appraisal_scores(nwpda, nwnda)
    return EdasBreakdown(
        model_names=matrix.model_names,
        averages=avg,
        pda=pda,
        nda=nda,
        wpda=wpda,
        wnda=wnda,
        nwpda=nwpda,
        nwnda=nwnda,
        appraisal=m,
        ranks=rank(m),
    )
