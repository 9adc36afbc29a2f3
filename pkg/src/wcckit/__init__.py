"""Weighted Community Clustering (WCC) and companion partition-quality tools."""

from .compare import KendallResult, RankSeries, kendall, nmi, read_rank_series
from .errors import CapabilityError, DomainError, ParseError, ValidationError, WCCError
from .fixtures import (
    Theorem1Params,
    Theorem3Params,
    exhaustive_best_partition,
    gen_fixture,
    theorem1_margin,
    theorem1_threshold,
    theorem3_values,
)
from .graph import Graph, VertexSet, load_edge_list, triangle_partners, triangles_with, write_edge_list
from .kernels import backend
from .partition import Partition, read_partition, write_partition
from .quality import (
    StatRecord,
    community_stats,
    conductance,
    evaluate,
    modularity,
    partition_stats,
    percentile_report,
)
from .wcc import ScoreReport, wcc_community, wcc_partition, wcc_vertex

__version__ = "0.1.0"
