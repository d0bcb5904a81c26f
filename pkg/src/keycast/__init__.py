"""Secure multicast and key-cast on acyclic networks with single-node eavesdroppers."""

from .altpath import (
    BACKWARD,
    FORWARD,
    AltPathWitness,
    InvalidWitness,
    NotProtected,
    TraversalState,
    alt_reachable_states,
    extract_witness,
    is_protected,
    validate_witness,
    w_sets,
)
from .graph import (
    KEYCAST,
    MULTICAST,
    Block,
    BlockDecomposition,
    CyclicGraph,
    GraphError,
    Instance,
    InternalInvariant,
    Network,
    NoPath,
    UnknownVertex,
    block_decomposition,
    cut_vertices,
    reachable_from,
    reaching,
    shortest_path,
    topological_order,
    vertex_disjoint_pair,
)
from .keydist import (
    UnprotectedMap,
    find_support_set,
    protocol2_route,
    synth_keycast,
    unprotected_map,
)
from .multicast import (
    Infeasible,
    NoAuxPath,
    NoAvoidingPath,
    SynthesisDefect,
    build_r_paths,
    extend_to_keycast,
    padding_gadget,
    synth_multicast,
    synth_single,
)
from .netcode import (
    CodeBuilder,
    CodeError,
    LinearCode,
    Symbol,
    SymbolBasis,
    TooLarge,
    VerificationReport,
    check_decoding,
    check_local,
    check_secrecy_bruteforce,
    check_secrecy_rank,
    evaluate,
    mutual_information,
    node_view,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
