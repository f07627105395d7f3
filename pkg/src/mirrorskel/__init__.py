"""Tropical curves dual to unimodular triangulations, ribbon-graph skeleta of
their mirror curves, and the matching chart diagrams."""

from .charts import (
    ChartDiagram,
    build_B_diagram,
    build_cech_diagram,
    canonical_bijection,
    diagram_isomorphic,
    restrict_diagram,
)
from .errors import (
    InfeasibleError,
    MirrorSkelError,
    ParseError,
    RibbonError,
    StructuralError,
    TriangulationError,
)
from .lattice import LatticePolytope, Triangulation, dual_tropical_graph, fan_charts, validate_triangulation
from .quiver import KRONECKER, Quiver, QuiverRep, euler_form, hom_complex, wheel_to_quiver
from .ribbon import RibbonGraph, dumbbell, ensure_cycle_at_face, standard_skeleton, surface_invariants, theta
from .synth import glue_along_cycles, synthesize
from .tropical import TropicalGraph, mirror_invariants, sweep_decompose

__version__ = "0.1.0"
