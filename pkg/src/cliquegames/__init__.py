"""Monotone circuits and two-party games that locate a nonedge of a graph."""

from .circuit import (
    AmplificationError,
    Circuit,
    CircuitBuilder,
    CircuitInvariantError,
    VerificationBudgetError,
    build_threshold_sort,
    build_threshold_valiant,
    evaluate,
    evaluate_many,
    node_values,
    parse_circuit,
    serialize_circuit,
    sorting_network,
    truth_table,
    verify_threshold,
)
from .games import (
    BICLIQUE,
    CLIQUE,
    EDGE_BICLIQUE,
    RELAXED_CLIQUE,
    GameConfig,
    GameKind,
    Outcome,
    PromiseViolationError,
    SeparationError,
    Transcript,
    TranscriptEntry,
    bit_bound,
    find_separating_variable,
    game_circuit,
    incidence_vector,
    induced_clique_circuit,
    kind_from_name,
    legal_answer,
    monomial_clique_circuit,
    monomial_threshold_circuit,
    non_incidence_vector,
    play,
    relaxed_non_incidence_vector,
    replay_transcript,
)
from .graph import (
    Graph,
    GraphParseError,
    NonedgeIndex,
    OracleLimitError,
    TrivialGraphError,
    common_neighbors,
    find_nonedge_within,
    graph_from_edges,
    incident_nonedges,
    max_biclique_size,
    max_clique_size,
    max_edge_biclique,
    maximal_cliques,
    nonedges,
    parse_graph,
    strip_stars,
)
from .harness import (
    SUITE_NAMES,
    SuiteReport,
    ValidInput,
    catalog_all_graphs,
    catalog_named,
    catalog_random,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    enumerate_valid_inputs,
    path_graph,
    random_graph,
    run_suite,
    worst_case_bits,
)

__version__ = "0.1.0"
