"""Graph-state vertex-minors, circle graphs and edge-disjoint path reductions."""

from .graphs import (
    GraphError,
    LabeledGraph,
    MultiGraph,
    apply_lc_sequence,
    degree,
    delete_vertices,
    graph_union,
    induced_subgraph,
    local_complement,
    parse_text,
    to_dot,
    to_text,
)
from .circle import (
    DoubleOccurrenceWord,
    EulerianTour,
    TourError,
    alternance_graph,
    eulerian_tours,
    extend_to_eulerian,
    find_eulerian_tour,
    induced_word,
    restrict_word,
)
from .oracles import (
    CertificateError,
    InstanceError,
    OrbitTruncated,
    PairSet,
    VmWitness,
    Walk,
    check_paths,
    check_vm_witness,
    decide_bellvm,
    decide_bellvm_via_tours,
    decide_edp,
    decide_edpdt,
    is_vertex_minor,
    lc_orbit,
)
from .gadgets import (
    build_grid_gadget,
    edge_interval_horizontal,
    edge_interval_vertical,
    grape_expand,
    reduce_edp_to_4reg_edpdt,
    regularize,
    route_pairing,
)
from .bellvm_reduction import (
    build_h_graph,
    check_pad_ring,
    reduce_edpdt_to_bellvm,
    witness_tour_word,
)

__version__ = "0.1.0"
