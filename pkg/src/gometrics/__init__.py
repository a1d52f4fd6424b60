"""Exact and floating-point geodesic-orbit analysis for compact homogeneous
spaces: root systems, compact Lie algebras, block metrics, Ricci curvature,
and linear feasibility certificates.
"""

from .gocheck import (
    FeasibilityResult,
    GOCertificate,
    ReductiveSpace,
    Tolerances,
    go_check,
    go_feasible_direct,
    go_feasible_normal_transitive,
    go_feasible_reduced,
    lie_group_go_check,
    sample_tangent_vectors,
)
from .liealg import (
    CompactLieAlgebra,
    Subspace,
    build_compact_from_rootsystem,
    build_su2,
    build_su3,
    centralizer,
    direct_sum,
    is_subalgebra,
    module_product,
    normalizer,
)
from .metrics import (
    MetricEndomorphism,
    MetricValidationError,
    ModuleDecomposition,
    detect_naturally_reductive,
    is_adapted,
    make_metric,
    max_right_isometry_algebra,
)
from .ricci import EinsteinCheck, RicciResult, einstein_check, ricci_left_invariant
from .rootsys import (
    RootSubsystem,
    RootSystem,
    build_a1,
    build_a2,
    build_g2,
    enumerate_closed_symmetric_subsystems,
    subsystems_equivalent,
    weyl_group,
)
from .scalars import Quad, exact_div, exact_sqrt, format_scalar, is_exact
from .spaces import (
    EINSTEIN_SET_1,
    EINSTEIN_SET_2,
    EINSTEIN_SET_3,
    AloffWallach,
    ClassificationRefused,
    G2Decomposition,
    aloff_wallach,
    aw_extended_presentation,
    aw_go_classify,
    aw_metric,
    aw_obstruction,
    aw_symbolic_go_witness,
    g2_block_bracket_csv,
    g2_decomposition,
    g2_metric,
    reproduce_main_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "EINSTEIN_SET_1",
    "EINSTEIN_SET_2",
    "EINSTEIN_SET_3",
    "AloffWallach",
    "ClassificationRefused",
    "CompactLieAlgebra",
    "EinsteinCheck",
    "FeasibilityResult",
    "G2Decomposition",
    "GOCertificate",
    "MetricEndomorphism",
    "MetricValidationError",
    "ModuleDecomposition",
    "Quad",
    "ReductiveSpace",
    "RicciResult",
    "RootSubsystem",
    "RootSystem",
    "Subspace",
    "Tolerances",
    "aloff_wallach",
    "aw_extended_presentation",
    "aw_go_classify",
    "aw_metric",
    "aw_obstruction",
    "aw_symbolic_go_witness",
    "build_a1",
    "build_a2",
    "build_compact_from_rootsystem",
    "build_g2",
    "build_su2",
    "build_su3",
    "centralizer",
    "detect_naturally_reductive",
    "direct_sum",
    "einstein_check",
    "enumerate_closed_symmetric_subsystems",
    "exact_div",
    "exact_sqrt",
    "format_scalar",
    "g2_block_bracket_csv",
    "g2_decomposition",
    "g2_metric",
    "go_check",
    "go_feasible_direct",
    "go_feasible_normal_transitive",
    "go_feasible_reduced",
    "is_adapted",
    "is_exact",
    "is_subalgebra",
    "lie_group_go_check",
    "make_metric",
    "max_right_isometry_algebra",
    "module_product",
    "normalizer",
    "reproduce_main_theorem",
    "ricci_left_invariant",
    "sample_tangent_vectors",
    "subsystems_equivalent",
    "weyl_group",
]
