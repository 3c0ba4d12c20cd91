"""Long-format leaderboard files -> :class:`~kgedas.edas_core.DecisionMatrix`.

A leaderboard is a flat list of ``(model, dataset, metric, value)``
records, stored either as CSV with the header ``model,dataset,metric,value``
or as a JSON array of objects with those four keys. Each distinct
``(dataset, metric)`` pair becomes one criterion named ``"dataset/metric"``.

The criteria configuration is a JSON object::

    {"directions": {"MR": "cost", "MRR": "benefit"},
     "weights": {"FB15k/MR": 0.5, "FB15k/MRR": 0.5},
     "missing": "error"}

``weights`` and ``missing`` are optional.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .edas_core import Criterion, DecisionMatrix, Direction
from .errors import (
    ConfigError,
    DuplicateRecord,
    EmptyInput,
    MissingCell,
    MissingDirection,
    ParseError,
)

__all__ = [
    "LeaderboardRecord",
    "MissingPolicy",
    "CriteriaConfig",
    "DEFAULT_DIRECTIONS",
    "FIXTURES",
    "parse_leaderboard",
    "read_leaderboard",
    "load_config",
    "assemble",
    "matrix_to_records",
    "matrix_config",
    "records_to_csv",
    "fixture_path",
    "load_fixture",
    "load_fixture_matrix",
]

HEADER = ("model", "dataset", "metric", "value")
SEPARATOR = "/"

DEFAULT_DIRECTIONS: dict[str, Direction] = {
    "MR": Direction.COST,
    "MRR": Direction.BENEFIT,
    "Hit@1": Direction.BENEFIT,
    "Hit@3": Direction.BENEFIT,
    "Hit@10": Direction.BENEFIT,
}

#: Bundled leaderboards, transcribed from published KGC result tables.
FIXTURES = {
    "relation_prediction": "relation_prediction.csv",
    "relation_prediction_edas": "relation_prediction_edas.csv",
    "tail_prediction": "tail_prediction.csv",
    "tail_prediction_edas": "tail_prediction_edas.csv",
    "ablation": "ablation.csv",
    "ablation_ranks": "ablation_ranks.csv",
}


@dataclass(frozen=True)
class LeaderboardRecord:
    model: str
    dataset: str
    metric: str
    value: float

    @property
    def criterion(self) -> str:
        return f"{self.dataset}{SEPARATOR}{self.metric}"


class MissingPolicy(enum.Enum):
    ERROR = "error"
    IMPUTE = "impute"


@dataclass(frozen=True)
class CriteriaConfig:
    metric_directions: Mapping[str, Direction] = field(
        default_factory=lambda: dict(DEFAULT_DIRECTIONS)
    )
    weights: Mapping[str, float] | None = None
    missing_policy: MissingPolicy = MissingPolicy.ERROR

    def __post_init__(self):
        dirs = {}
        for metric, d in self.metric_directions.items():
            try:
                dirs[str(metric)] = Direction.parse(d)
            except ValueError as exc:
                raise ConfigError(f"metric {metric!r}: {exc}") from None
        object.__setattr__(self, "metric_directions", dirs)
        if self.weights is not None:
            w = {}
            for name, value in self.weights.items():
                try:
                    fv = float(value)
                except (TypeError, ValueError):
                    raise ConfigError(f"weight for {name!r} is not a number: {value!r}") from None
                if not math.isfinite(fv) or fv < 0:
                    raise ConfigError(f"weight for {name!r} must be finite and >= 0, got {value!r}")
                w[str(name)] = fv
            object.__setattr__(self, "weights", w)
        try:
            object.__setattr__(self, "missing_policy", MissingPolicy(self.missing_policy))
        except ValueError:
            raise ConfigError(
                f"missing policy must be 'error' or 'impute', got {self.missing_policy!r}"
            ) from None

    def with_policy(self, policy: MissingPolicy | str) -> "CriteriaConfig":
        return CriteriaConfig(self.metric_directions, self.weights, MissingPolicy(policy))

    @classmethod
    def from_dict(cls, obj) -> "CriteriaConfig":
        if not isinstance(obj, dict):
            raise ConfigError("criteria config must be a JSON object")
        unknown = set(obj) - {"directions", "weights", "missing"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        directions = obj.get("directions", DEFAULT_DIRECTIONS)
        if not isinstance(directions, dict):
            raise ConfigError("'directions' must be an object mapping metric -> benefit|cost")
        weights = obj.get("weights")
        if weights is not None and not isinstance(weights, dict):
            raise ConfigError("'weights' must be an object mapping criterion -> number")
        return cls(directions, weights, obj.get("missing", "error"))

    def to_dict(self) -> dict:
        out = {
            "directions": {k: v.value for k, v in self.metric_directions.items()},
            "missing": self.missing_policy.value,
        }
        if self.weights is not None:
            out["weights"] = dict(self.weights)
        return out


def _parse_value(raw, where: str) -> float:
    if isinstance(raw, bool):
        raise ParseError(f"{where}: value is not numeric: {raw!r}")
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: value is not numeric: {raw!r}") from None
    if not math.isfinite(value):
        raise ParseError(f"{where}: value must be finite, got {raw!r}")
    if value < 0:
        raise ParseError(f"{where}: value must be non-negative, got {raw!r}")
    return value


def _check_name(raw, key: str, where: str) -> str:
    if not isinstance(raw, str) or not raw.strip():
        raise ParseError(f"{where}: {key} must be a non-empty string, got {raw!r}")
    name = raw.strip()
    if key in ("dataset", "metric") and SEPARATOR in name:
        raise ParseError(f"{where}: {key} {name!r} may not contain {SEPARATOR!r}")
    return name


def _parse_csv(text: str) -> list[tuple[str, dict]]:
    reader = csv.reader(io.StringIO(text, newline=""))
    rows = []
    header = None
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if header is None:
            header = tuple(c.strip().lstrip("\ufeff") for c in row)
            if header != HEADER:
                raise ParseError(f"line {line}: expected header {','.join(HEADER)}, got {','.join(row)}")
            continue
        if len(row) != 4:
            raise ParseError(f"line {line}: expected 4 fields, got {len(row)}")
        rows.append((f"line {line}", dict(zip(HEADER, row))))
    if header is None:
        raise ParseError(f"line 1: missing header {','.join(HEADER)}")
    return rows


def _parse_json(text: str) -> list[tuple[str, dict]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, list):
        raise ParseError("JSON leaderboard must be an array of records")
    rows = []
    for idx, obj in enumerate(data):
        where = f"record {idx}"
        if not isinstance(obj, dict) or set(obj) != set(HEADER):
            raise ParseError(f"{where}: expected an object with keys {', '.join(HEADER)}")
        if not isinstance(obj["value"], (int, float)) or isinstance(obj["value"], bool):
            raise ParseError(f"{where}: value must be a JSON number, got {obj['value']!r}")
        rows.append((where, obj))
    return rows


def parse_leaderboard(text: str, format: str = "csv") -> list[LeaderboardRecord]:
    """Parse leaderboard text into records.

    Parameters
    ----------
    text : str
        File contents. LF and CRLF line endings are both accepted.
    format : {"csv", "json"}

    Raises
    ------
    ParseError
        Malformed row, non-numeric, negative or non-finite value. The
        message names the offending line (CSV) or record index (JSON).
    DuplicateRecord
        The same ``(model, dataset, metric)`` appears twice.
    """
    fmt = format.lower()
    if fmt == "csv":
        rows = _parse_csv(text)
    elif fmt == "json":
        rows = _parse_json(text)
    else:
        raise ParseError(f"unknown leaderboard format {format!r}")

    records = []
    seen: dict[tuple[str, str, str], str] = {}
    for where, row in rows:
        model = _check_name(row["model"], "model", where)
        dataset = _check_name(row["dataset"], "dataset", where)
        metric = _check_name(row["metric"], "metric", where)
        value = _parse_value(row["value"], where)
        key = (model, dataset, metric)
        if key in seen:
            raise DuplicateRecord(f"{where}: duplicate record {model}/{dataset}/{metric} (first at {seen[key]})")
        seen[key] = where
        records.append(LeaderboardRecord(model, dataset, metric, value))
    return records


def read_leaderboard(path: str | Path) -> list[LeaderboardRecord]:
    """Read a ``.csv`` or ``.json`` leaderboard; format follows the suffix."""
    path = Path(path)
    fmt = "json" if path.suffix.lower() == ".json" else "csv"
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    return parse_leaderboard(text, fmt)


def load_config(path: str | Path | None) -> CriteriaConfig:
    if path is None:
        return CriteriaConfig()
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc.msg}") from None
    return CriteriaConfig.from_dict(obj)


def assemble(records: Iterable[LeaderboardRecord], config: CriteriaConfig | None = None) -> DecisionMatrix:
    """Pivot records into a decision matrix.

    Criteria are the distinct ``(dataset, metric)`` pairs sorted by dataset
    then metric; models keep their order of first appearance. Weights are
    ``1/m`` unless the config provides one for every criterion.
    """
    config = config or CriteriaConfig()
    records = list(records)
    if not records:
        raise EmptyInput("leaderboard has no records")

    models: dict[str, int] = {}
    pairs = set()
    for r in records:
        models.setdefault(r.model, len(models))
        pairs.add((r.dataset, r.metric))
    pairs = sorted(pairs)

    missing_dirs = sorted({m for _, m in pairs if m not in config.metric_directions})
    if missing_dirs:
        raise MissingDirection(f"no direction configured for metric(s): {', '.join(missing_dirs)}")

    col = {p: j for j, p in enumerate(pairs)}
    n, m = len(models), len(pairs)
    x = np.full((n, m), np.nan)
    for r in records:
        x[models[r.model], col[(r.dataset, r.metric)]] = r.value

    names = [f"{d}{SEPARATOR}{mt}" for d, mt in pairs]
    holes = np.isnan(x)
    imputed = None
    if holes.any():
        model_list = list(models)
        if config.missing_policy is MissingPolicy.ERROR:
            i, j = np.argwhere(holes)[0]
            d, mt = pairs[j]
            raise MissingCell(
                f"missing value for model {model_list[i]!r}, dataset {d!r}, metric {mt!r} "
                f"({int(holes.sum())} missing cell(s) in total)"
            )
        for j in np.flatnonzero(holes.any(axis=0)):
            present = x[~holes[:, j], j]
            # every column has at least one record by construction
            x[holes[:, j], j] = present.mean()
        imputed = holes

    if config.weights is not None:
        undeclared = [c for c in names if c not in config.weights]
        if undeclared:
            raise ConfigError(f"weights given but missing for criterion(s): {', '.join(undeclared)}")
        weights = [config.weights[c] for c in names]
    else:
        weights = [1.0 / m] * m

    criteria = tuple(
        Criterion(name, config.metric_directions[mt], w)
        for name, (_, mt), w in zip(names, pairs, weights)
    )
    return DecisionMatrix(tuple(models), criteria, x, imputed)


def matrix_to_records(matrix: DecisionMatrix) -> list[LeaderboardRecord]:
    """Inverse of :func:`assemble`; imputed cells are left out."""
    out = []
    for i, model in enumerate(matrix.model_names):
        for j, c in enumerate(matrix.criteria):
            if matrix.imputed is not None and matrix.imputed[i, j]:
                continue
            dataset, _, metric = c.name.rpartition(SEPARATOR)
            out.append(LeaderboardRecord(model, dataset, metric, float(matrix.scores[i, j])))
    return out


def matrix_config(matrix: DecisionMatrix) -> CriteriaConfig:
    """Config that reproduces the matrix's directions and weights."""
    directions = {c.metric: c.direction for c in matrix.criteria}
    weights = {c.name: c.weight for c in matrix.criteria}
    policy = MissingPolicy.IMPUTE if matrix.imputed is not None and matrix.imputed.any() else MissingPolicy.ERROR
    return CriteriaConfig(directions, weights, policy)


def records_to_csv(records: Iterable[LeaderboardRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for r in records:
        writer.writerow((r.model, r.dataset, r.metric, repr(float(r.value))))
    return buf.getvalue()


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled fixture (see :data:`FIXTURES`)."""
    try:
        fname = FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}") from None
    return Path(str(resources.files("kgedas") / "data" / fname))


def load_fixture(name: str) -> list[LeaderboardRecord]:
    return read_leaderboard(fixture_path(name))


def load_fixture_matrix(name: str, config: CriteriaConfig | None = None) -> DecisionMatrix:
    return assemble(load_fixture(name), config)
