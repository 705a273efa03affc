"""Graph isomorphism testing via partition-refinement sequences.

Builds a deterministic sequence of partition refinements for each graph,
discovers automorphisms at backtracking points to collapse equivalent
search branches, and matches one sequence against the other with
components-theorem backjumping.  Includes hard-instance family
generators, a brute-force oracle, and a benchmark harness.
"""

from .graph import (
    Code,
    DegreeTriple,
    Graph,
    GraphFormatError,
    adjacency_code,
    apply_permutation,
    available_degree,
    has_links,
    induced_subgraph,
    is_isomorphism,
    load_graph,
    save_graph,
    uniform_degree,
)
from .partition import (
    DiscardedCell,
    Partition,
    RefinementOutcome,
    concat,
    is_equitable,
    partition_by_set,
    partition_by_vertex,
    partitions_compatible,
    set_refinement,
    vertex_refinement,
)
from .sequence import (
    Level,
    RefinementKind,
    SequenceOfPartitions,
    backtrack_amount,
    degree_partition,
    dump_sequence,
    final_cross_degrees,
    generate_sequence,
)
from .orbits import (
    ExtendedSequence,
    SemiorbitPartition,
    find_automorphisms,
    merge_classes,
    same_class,
)
from .matching import (
    InternalError,
    MatchOutcome,
    SearchTimeout,
    are_isomorphic,
    backjump_level,
    extract_isomorphism,
    match,
)
from .oracle import (
    brute_force_isomorphism,
    brute_force_orbits,
    random_digraph,
    random_iso_pair,
)
from .families import (
    Component,
    FamilySpec,
    complete_join,
    load_component,
    make_srg_join_pair,
    make_tripartite_pair,
    make_two_level_pair,
    paley_graph,
    rook_graph_4x4,
    save_component,
    shrikhande_graph,
    tripartite_component,
    tripartite_union,
    two_level_base_pair,
    two_level_family,
    verify_srg,
)
from .bench import BenchPlan, BenchRecord, SummaryRow, nsd, run_bench, summarize

__version__ = "0.1.0"
