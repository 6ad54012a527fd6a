"""Vertex Folkman numbers: arrow checking, maximal-graph generation and censuses."""

from .arrow import (
    ArrowTuple,
    ClassRecord,
    FamilyError,
    FreeColoring,
    TupleError,
    arrows,
    arrows_uni,
    classify,
    dominant_tuples,
    find_free_coloring,
    normalize_tuple,
    uni_tuples,
)
from .canon import CanonicalForm, are_isomorphic, canonical_form
from .extend import (
    ExtensionTask,
    add_independent_vertices,
    downward_closure,
    edge_addition_critical,
    populate,
)
from .gen import GenConstraints, filter_set, generate_all, iter_graphs
from .graph import (
    Graph,
    GraphError,
    GraphStats,
    chromatic_number,
    clique_number,
    complement,
    complete,
    cycle,
    independence_number,
    join,
    stats,
)
from .graphset import GraphSet
from .kfree import MaximalFreeFamily, maximal_kfree_subsets
from .pipeline import PipelineSpec, StageReport, props_table, run_pipeline, vertex_deletion_check
from .verdicts import FolkmanVerdict, VerdictLedger, sandwich_report

__version__ = "0.1.0"
