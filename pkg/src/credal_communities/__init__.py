"""Overlapping community detection with credal partitions.

Nodes are embedded with the top eigenvectors of ``A x = lambda D x``,
clustered with evidential c-means, and the community count is chosen by
maximising an evidential (plausibility-based) modularity.
"""

from .belief import (
    CredalPartition,
    FocalSetCatalog,
    MassFunction,
    bel,
    contour,
    hard_credal_assignment,
    pignistic,
    pl,
)
from .ecm import EcmParams, ecm_cluster
from .graph import Graph, load_graph, parse_edge_list, parse_gml
from .modularity import evidential_modularity, fuzzy_modularity, hard_modularity
from .pipeline import DetectionReport, SweepConfig, detect
from .spectral import Embedding, embed, generalized_eigs

__version__ = "0.1.0"

__all__ = [
    "CredalPartition",
    "DetectionReport",
    "EcmParams",
    "Embedding",
    "FocalSetCatalog",
    "Graph",
    "MassFunction",
    "SweepConfig",
    "bel",
    "contour",
    "detect",
    "ecm_cluster",
    "embed",
    "evidential_modularity",
    "fuzzy_modularity",
    "generalized_eigs",
    "hard_credal_assignment",
    "hard_modularity",
    "load_graph",
    "parse_edge_list",
    "parse_gml",
    "pignistic",
    "pl",
]
