"""Multi-metric, multi-dataset appraisal of knowledge graph completion models.

Scores from many ``(dataset, metric)`` criteria are folded into one
appraisal ``M`` in [0, 1] by measuring each model's distance from the
average solution, then ranked.
"""

from .analysis import (
    AblationReport,
    CorrelationReport,
    ablate,
    ablation_table,
    correlate,
    kendall_tau,
    mean_metric,
    pearson,
    resolve_spec,
)
from .edas_core import (
    Criterion,
    DecisionMatrix,
    Direction,
    EdasBreakdown,
    appraisal_scores,
    column_averages,
    distances,
    evaluate,
    normalize,
    rank,
    weighted_sums,
)
from .ingest import (
    CriteriaConfig,
    LeaderboardRecord,
    MissingPolicy,
    assemble,
    load_config,
    load_fixture,
    load_fixture_matrix,
    parse_leaderboard,
    read_leaderboard,
)
from .rank_metrics import RankList, hits_at_k, mean_rank, mean_reciprocal_rank

__version__ = "0.1.0"
