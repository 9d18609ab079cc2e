"""Collective co-movement metrics for correlated time series.

Pipeline: price CSVs -> aligned panel -> normalized log returns ->
cross-correlation matrix -> eigenvector participation metrics against a
value-preserving shuffled null -> correlation-distance communities.
"""

__version__ = "0.1.0"

from .clustering import (
    ClusterTree,
    CommunityAssignment,
    agglomerate,
    correlation_distance,
    cut_at_correlation,
    reorder_heatmap,
    to_newick,
    tree_to_json,
)
from .correlation import (
    CorrelationMatrix,
    EigenSystem,
    correlate,
    correlation_from_csv,
    correlation_from_json,
    correlation_to_csv,
    correlation_to_json,
    eigendecompose,
)
from .errors import InputError, NumericalError
from .ingest import PricePanel, PriceSeries, align, load_csv, restrict_dates
from .nullmodel import RNG_ALGORITHM, ShuffleEnsemble, make_ensemble, member_rng, shuffle_once
from .participation import (
    CollectiveReport,
    Histogram,
    collective_report,
    independency_pdf,
    node_participation_ratios,
    participation_ratios,
    relative_participation_ratio,
)
from .pipeline import RunConfig, run_pipeline
from .returns import ReturnPanel, log_returns, normalize, panel_returns
from .synth import FactorSpec, generate_blocks, generate_one_factor, to_price_panel

__all__ = [
    "ClusterTree",
    "CollectiveReport",
    "CommunityAssignment",
    "CorrelationMatrix",
    "EigenSystem",
    "FactorSpec",
    "Histogram",
    "InputError",
    "NumericalError",
    "PricePanel",
    "PriceSeries",
    "RNG_ALGORITHM",
    "ReturnPanel",
    "RunConfig",
    "ShuffleEnsemble",
    "agglomerate",
    "align",
    "collective_report",
    "correlate",
    "correlation_distance",
    "correlation_from_csv",
    "correlation_from_json",
    "correlation_to_csv",
    "correlation_to_json",
    "cut_at_correlation",
    "eigendecompose",
    "generate_blocks",
    "generate_one_factor",
    "independency_pdf",
    "load_csv",
    "log_returns",
    "make_ensemble",
    "member_rng",
    "node_participation_ratios",
    "normalize",
    "panel_returns",
    "participation_ratios",
    "relative_participation_ratio",
    "reorder_heatmap",
    "restrict_dates",
    "run_pipeline",
    "shuffle_once",
    "to_newick",
    "to_price_panel",
    "tree_to_json",
]
