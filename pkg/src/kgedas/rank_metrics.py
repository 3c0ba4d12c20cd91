"""Rank-based link prediction metrics: MR, MRR and Hits@k.

Ranks are taken as produced upstream (raw or filtered protocol alike) and
must be strictly positive integers.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import EmptyRankList, InvalidK, InvalidRank

__all__ = ["RankList", "mean_rank", "mean_reciprocal_rank", "hits_at_k", "summary"]


@dataclass(frozen=True, eq=False)
class RankList:
    """Validated, immutable sequence of test-query ranks."""

    ranks: np.ndarray

    def __post_init__(self):
        arr = _to_int_array(self.ranks)
        arr.setflags(write=False)
        object.__setattr__(self, "ranks", arr)

    def __len__(self):
        return int(self.ranks.shape[0])

    @property
    def n(self) -> int:
        return len(self)


def _to_int_array(values) -> np.ndarray:
    if isinstance(values, np.ndarray) and values.dtype.kind in "iu":
        arr = values.ravel().astype(np.int64)
        if arr.size == 0:
            raise EmptyRankList("rank list is empty")
        if (arr < 1).any():
            idx = int(np.flatnonzero(arr < 1)[0])
            raise InvalidRank(f"rank #{idx + 1} must be >= 1, got {arr[idx]}")
        return arr
    if isinstance(values, np.ndarray):
        items = values.ravel().tolist()
    else:
        items = list(values)
    if not items:
        raise EmptyRankList("rank list is empty")
    out = np.empty(len(items), dtype=np.int64)
    for idx, v in enumerate(items):
        if isinstance(v, bool) or not isinstance(v, numbers.Real):
            raise InvalidRank(f"rank #{idx + 1} is not a number: {v!r}")
        if isinstance(v, numbers.Integral):
            iv = int(v)
        else:
            fv = float(v)
            if not fv.is_integer():
                raise InvalidRank(f"rank #{idx + 1} is not an integer: {v!r}")
            iv = int(fv)
        if iv < 1:
            raise InvalidRank(f"rank #{idx + 1} must be >= 1, got {iv}")
        out[idx] = iv
    return out


def _ranks(r: RankList | Iterable[int]) -> np.ndarray:
    if isinstance(r, RankList):
        return r.ranks
    return RankList(r).ranks


def mean_rank(r: RankList | Iterable[int]) -> float:
    return float(_ranks(r).mean())


def mean_reciprocal_rank(r: RankList | Iterable[int]) -> float:
    return float((1.0 / _ranks(r)).mean())


def hits_at_k(r: RankList | Iterable[int], k: int) -> float:
    """Fraction of queries whose rank is at most ``k``."""
    ranks = _ranks(r)
    if isinstance(k, bool) or not isinstance(k, numbers.Integral) or k < 1:
        raise InvalidK(f"k must be an integer >= 1, got {k!r}")
    return float(np.count_nonzero(ranks <= k) / ranks.shape[0])


def summary(r: RankList | Iterable[int], ks: Iterable[int] = (1, 3, 10)) -> dict[str, float]:
    """MR, MRR and Hits@k for every requested ``k``, keyed by metric name."""
    ranks = RankList(_ranks(r))
    out = {"MR": mean_rank(ranks), "MRR": mean_reciprocal_rank(ranks)}
    for k in ks:
        out[f"Hit@{k}"] = hits_at_k(ranks, k)
    return out
