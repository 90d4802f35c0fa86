"""Edge-disjoint routing toolkit for quadrants of the 6x6 grid."""

from .grid import (
    Corner,
    GridGraph,
    Vertex,
    adjusted_quadrant,
    edge,
    landmarks,
    make_grid,
    quadrant,
    quadrant_symmetries,
)
from .routing import (
    Demand,
    Infeasible,
    Instance,
    PathSystem,
    VerifyResult,
    is_weakly_2_linked,
    solve,
    verify,
)
from .flow import escape_flow
from .lemmas import (
    Clamp,
    CrowdedResult,
    ExceptionalRefusal,
    Frame,
    FramingResult,
    LemmaDefect,
    LemmaReport,
    NoMatch,
    build_frame,
    clamp_matching,
    crowded_escape,
    escape_three_distinct,
    escape_three_shared,
    frame_c0_mate_c1,
    frame_c1_mate_corner,
    frame_two_mate_third,
    link_and_escape,
    link_pair_escort_singletons,
    mate_pair_to_cycles,
    project_with_b_link,
)
from .verifier import (
    Campaign,
    PairabilityInstance,
    degenerate_reason,
    enumerate_instances,
    escape_agreement_check,
    exceptional_families,
    pairability_check,
    report_conforms,
    verify_lemma,
)

__version__ = "0.1.0"

__all__ = [
    "Campaign",
    "Clamp",
    "Corner",
    "CrowdedResult",
    "Demand",
    "ExceptionalRefusal",
    "Frame",
    "FramingResult",
    "GridGraph",
    "Infeasible",
    "Instance",
    "LemmaDefect",
    "LemmaReport",
    "NoMatch",
    "PairabilityInstance",
    "PathSystem",
    "VerifyResult",
    "Vertex",
    "adjusted_quadrant",
    "build_frame",
    "clamp_matching",
    "crowded_escape",
    "degenerate_reason",
    "edge",
    "enumerate_instances",
    "escape_agreement_check",
    "escape_flow",
    "escape_three_distinct",
    "escape_three_shared",
    "exceptional_families",
    "frame_c0_mate_c1",
    "frame_c1_mate_corner",
    "frame_two_mate_third",
    "is_weakly_2_linked",
    "landmarks",
    "link_and_escape",
    "link_pair_escort_singletons",
    "make_grid",
    "mate_pair_to_cycles",
    "pairability_check",
    "project_with_b_link",
    "quadrant",
    "quadrant_symmetries",
    "report_conforms",
    "solve",
    "verify",
    "verify_lemma",
]
