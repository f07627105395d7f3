"""Ribbon graphs: faces, moves, standard skeleta, subgraphs and wheels."""

from .core import (
    Contraction,
    Expansion,
    FaceWalk,
    RibbonGraph,
    Subdivision,
    apply_move,
    apply_move_with_inverse,
    canonical_form,
    compact,
    component_graphs,
    component_invariants,
    components,
    disjoint_union,
    face_by_label,
    face_walk,
    faces,
    induced,
    is_connected,
    isomorphic,
    subdivide_edge,
    surface_invariants,
    union_all,
    validate_ribbon,
)
from .subgraphs import (
    ClosedSubgraphReport,
    GluingCertificate,
    OpenSubgraph,
    Subgraph,
    Wheel,
    WheelClass,
    canonical_pattern,
    classify_wheel,
    closed_subgraph_ops,
    gluing_cover_check,
    is_closed_subgraph,
    is_good,
    is_wheel,
    tubular_neighborhood,
    wheel,
)
from .surfaces import (
    DEFAULT_BUDGET,
    MoveLog,
    SplitResult,
    circle,
    close_up,
    dumbbell,
    end_connect_sum,
    ensure_cycle_at_face,
    figure_eight,
    has_cycle_at_face,
    label_all_faces,
    reconnect,
    resolve_face,
    split_at_cycle,
    standard_skeleton,
    theta,
    theta_n,
)
