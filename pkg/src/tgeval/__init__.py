"""Evaluation toolkit for dynamic link prediction on timestamped edge streams."""

__version__ = "0.1.0"

from .edgebank import VARIANT_INFINITY, VARIANT_TIME_WINDOW, EdgeBankMemory
from .ingest import (
    ParseError,
    ParseReport,
    parse_edgelist_csv,
    parse_file,
    parse_interaction_csv,
    write_edgelist_csv,
    write_interaction_csv,
)
from .metrics import (
    EvalRecord,
    MetricReport,
    ThresholdMetrics,
    au_pr,
    au_roc,
    average_precision,
    compute_report,
    threshold_metrics,
)
from .negsampler import (
    STRATEGIES,
    STRATEGY_HISTORICAL,
    STRATEGY_INDUCTIVE,
    STRATEGY_RANDOM,
    NegativeBatch,
    SamplerConfig,
    batch_rng,
    sample_historical,
    sample_inductive,
    sample_random,
)
from .plots import (
    TeaPoint,
    TetRow,
    bin_tea_series,
    render_tea_svg,
    render_tet_svg,
    tea_csv,
    tea_series,
    tet_csv,
    tet_rows,
)
from .stream import (
    ChronoSplit,
    DifficultyIndices,
    Edge,
    EdgeSets,
    EdgeStream,
    NodePair,
    build_stream,
    chronological_split,
    difficulty_indices,
    edge_sets,
    novelty_index,
    reoccurrence_index,
    surprise_index,
)

__all__ = [
    "__version__",
    "ChronoSplit",
    "DifficultyIndices",
    "Edge",
    "EdgeBankMemory",
    "EdgeSets",
    "EdgeStream",
    "EvalRecord",
    "MetricReport",
    "NegativeBatch",
    "NodePair",
    "ParseError",
    "ParseReport",
    "SamplerConfig",
    "STRATEGIES",
    "STRATEGY_HISTORICAL",
    "STRATEGY_INDUCTIVE",
    "STRATEGY_RANDOM",
    "TeaPoint",
    "TetRow",
    "ThresholdMetrics",
    "VARIANT_INFINITY",
    "VARIANT_TIME_WINDOW",
    "au_pr",
    "au_roc",
    "average_precision",
    "batch_rng",
    "bin_tea_series",
    "build_stream",
    "chronological_split",
    "compute_report",
    "difficulty_indices",
    "edge_sets",
    "novelty_index",
    "parse_edgelist_csv",
    "parse_file",
    "parse_interaction_csv",
    "render_tea_svg",
    "render_tet_svg",
    "reoccurrence_index",
    "sample_historical",
    "sample_inductive",
    "sample_random",
    "surprise_index",
    "tea_csv",
    "tea_series",
    "tet_csv",
    "tet_rows",
    "threshold_metrics",
    "write_edgelist_csv",
    "write_interaction_csv",
]
