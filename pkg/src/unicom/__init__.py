"""Community detection across unipartite, bipartite and directed graphs.

Every input family is routed through one bipartite block form, so a
single modularity optimizer and one set of belonging functions serve all
three. The typical flow:

>>> from unicom import datasets, louvain, unipartite_to_bipartite
>>> g, labels = datasets.load_karate()
>>> result = louvain(g)
>>> result.partition.k
4

or, scikit-learn style:

>>> from unicom import GraphUnifier, LouvainCommunities
>>> block = GraphUnifier().fit_transform(g)
>>> LouvainCommunities().fit(block).n_communities_
4
"""

from .errors import (
    CommunitySpaceMismatchError,
    ConfigError,
    DuplicateEdgeError,
    DuplicateEntryError,
    EmptyCommunityError,
    EmptyGraphError,
    EmptyInputError,
    GraphConstructionError,
    InconsistentDimensionsError,
    InternalInvariantError,
    NegativeWeightError,
    NonContiguousIdsWarning,
    NonNumericCellError,
    NonPositiveWeightError,
    ParseError,
    PartitionMismatchError,
    RaggedRowError,
    SelfLoopError,
    UnicomError,
    UnknownCommunityError,
    UnknownLabelError,
    UnknownNodeError,
    WrongOriginError,
)
from .graphs import (
    CLASS_IN,
    CLASS_OUT,
    CLASS_PLAIN,
    CLASS_U,
    CLASS_V,
    BipartiteGraph,
    DirectedGraph,
    Graph,
    LabelMap,
    build_bipartite,
    build_directed,
    build_unipartite,
    total_weight,
)
from .louvain import (
    DEFAULT_MIN_GAIN,
    DEFAULT_SEED,
    Dendrogram,
    LouvainCommunities,
    LouvainConfig,
    LouvainResult,
    aggregate,
    local_move_phase,
    louvain,
    run_sweep,
)
from .modularity import (
    barber_modularity,
    bimodularity,
    directed_bimodularity,
    leicht_newman_modularity,
    newman_modularity,
)
from .overlap import (
    FN_LEGITIMACY,
    FN_PROBABILITY,
    FN_RM,
    FN_WEIGHTED_LEGITIMACY,
    SIDE_BOTH,
    SIDE_U,
    SIDE_V,
    OverlapMatrix,
    ThresholdVector,
    best_cells,
    community_thresholds,
    legitimacy,
    lit_mask,
    probability,
    reassignment_modularity,
    rm_matrix,
)
from .partition import Partition, renumber
from .unify import (
    ORIGIN_BIPARTITE,
    ORIGIN_CLONE,
    ORIGIN_DIRECTED,
    BlockGraph,
    CloneReport,
    GraphUnifier,
    SymmetryVerdict,
    bipartite_to_block,
    check_clone_consistency,
    directed_to_bipartite,
    fold_block_partition,
    unfold,
    unipartite_to_bipartite,
)
from .viz import RenderSpec, export_csv, import_csv, render_dual, render_matrix

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # graphs
    "CLASS_U",
    "CLASS_V",
    "CLASS_OUT",
    "CLASS_IN",
    "CLASS_PLAIN",
    "Graph",
    "BipartiteGraph",
    "DirectedGraph",
    "LabelMap",
    "build_unipartite",
    "build_bipartite",
    "build_directed",
    "total_weight",
    # partition
    "Partition",
    "renumber",
    # unify
    "ORIGIN_BIPARTITE",
    "ORIGIN_CLONE",
    "ORIGIN_DIRECTED",
    "BlockGraph",
    "CloneReport",
    "SymmetryVerdict",
    "GraphUnifier",
    "bipartite_to_block",
    "unipartite_to_bipartite",
    "directed_to_bipartite",
    "fold_block_partition",
    "unfold",
    "check_clone_consistency",
    # louvain
    "DEFAULT_SEED",
    "DEFAULT_MIN_GAIN",
    "LouvainConfig",
    "LouvainResult",
    "Dendrogram",
    "LouvainCommunities",
    "louvain",
    "local_move_phase",
    "aggregate",
    "run_sweep",
    # modularity
    "newman_modularity",
    "bimodularity",
    "barber_modularity",
    "directed_bimodularity",
    "leicht_newman_modularity",
    # overlap
    "FN_PROBABILITY",
    "FN_LEGITIMACY",
    "FN_WEIGHTED_LEGITIMACY",
    "FN_RM",
    "SIDE_U",
    "SIDE_V",
    "SIDE_BOTH",
    "OverlapMatrix",
    "ThresholdVector",
    "probability",
    "legitimacy",
    "reassignment_modularity",
    "rm_matrix",
    "community_thresholds",
    "lit_mask",
    "best_cells",
    # viz
    "RenderSpec",
    "render_matrix",
    "render_dual",
    "export_csv",
    "import_csv",
    # errors
    "UnicomError",
    "GraphConstructionError",
    "NonPositiveWeightError",
    "DuplicateEdgeError",
    "DuplicateEntryError",
    "EmptyInputError",
    "EmptyGraphError",
    "SelfLoopError",
    "UnknownLabelError",
    "UnknownNodeError",
    "UnknownCommunityError",
    "PartitionMismatchError",
    "WrongOriginError",
    "EmptyCommunityError",
    "InconsistentDimensionsError",
    "CommunitySpaceMismatchError",
    "ParseError",
    "RaggedRowError",
    "NonNumericCellError",
    "NegativeWeightError",
    "ConfigError",
    "InternalInvariantError",
    "NonContiguousIdsWarning",
]
