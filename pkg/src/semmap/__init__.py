"""semmap: top-down construction and evaluation of conceptual spaces from
cross-linguistic form-function matrices.

Pipeline: parse a binary form-function matrix, build the dense colexification
graph (edge weight = number of forms attesting both functions), enumerate its
spanning trees lazily in descending weight order, score candidates with
intrinsic metrics (size, recall, precision, degree diversity) and extrinsic
accuracy against a reference map, then refine interactively over HTTP.
"""

from .baselines import StudyConfig, StudyResult, correlation_study, pearson, rg1, rg2
from .data import fixture_path, load_fixture
from .enumeration import (
    DEFAULT_BUDGET,
    Partition,
    SpanningTree,
    TreeStream,
    constrained_max_spanning_tree,
    spanning_tree_stream,
    tree_at_rank,
    weight_class_boundaries,
)
from .errors import (
    DegenerateStudyError,
    DimensionMismatchError,
    EnumerationError,
    MatrixFormatError,
    SemmapError,
    SubsetCapError,
)
from .graph import (
    AdjacencyMatrix,
    ConceptGraph,
    Edge,
    adjacency_matrix,
    build_dense_graph,
    count_connected_subsets,
    graph_size,
    is_connected,
    is_connected_subset,
)
from .maps import MapDiff, SemanticMap, diff, region, violations
from .matrix import (
    FormEntry,
    FormFunctionMatrix,
    FunctionLabel,
    binarize,
    binarize_counts,
    function_set,
    parse_matrix,
)
from .metrics import (
    DEFAULT_RANKS,
    Evaluation,
    accuracy,
    div_d,
    evaluate,
    evaluate_candidates,
    lb_c,
    lb_c_direct,
    lb_lt,
    precision,
    recall,
)

__version__ = "0.1.0"
