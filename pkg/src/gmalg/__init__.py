"""Exact generalized matrix algebras: structure, centers, trace and Lie-triple
decompositions over Q and F_p.

The public surface re-exports the main types and operations; see README.md
for the CLI and file formats.
"""

from .exact import (
    ExactError,
    ExactMatrix,
    RATIONAL,
    RingDescriptor,
    prime_field,
)
from .structure import (
    AlgebraSpec,
    AxiomError,
    BimoduleSpec,
    GMA,
    MoritaContext,
    assemble_gma,
    build_diagonal_pair,
    build_full_matrix,
    build_inflated,
    build_peirce,
    build_upper_triangular,
    check_morita_axioms,
    make_matrix_algebra,
    make_triangular_algebra,
)
from .center import (
    CenterData,
    CenterError,
    HypothesisReport,
    LoyaltyResult,
    check_loyal,
    hypothesis_report,
)
from .maps import (
    BilinearMapRep,
    LinearMapRep,
    MapError,
    is_centralizing_linear,
    is_centralizing_trace,
    is_commuting_linear,
    is_commuting_trace,
    is_jordan_hom,
    is_lie_triple_hom,
    trace_space,
)
from .decompose import (
    ComponentGrid,
    ConstructiveWitness,
    LieTripleDecomposition,
    PredicateNotSatisfied,
    ProperTraceForm,
    decompose_lie_triple_iso,
    decompose_trace_constructive,
    decompose_trace_generic,
    extract_components,
    extract_constructive_witness,
    random_lie_triple_iso,
    random_proper_trace,
)
from .io import (
    IOFormatError,
    load_context,
    load_map,
    save_context,
    save_map,
)

__all__ = [
    "AlgebraSpec",
    "AxiomError",
    "BilinearMapRep",
    "BimoduleSpec",
    "CenterData",
    "CenterError",
    "ComponentGrid",
    "ConstructiveWitness",
    "ExactError",
    "ExactMatrix",
    "GMA",
    "HypothesisReport",
    "IOFormatError",
    "LieTripleDecomposition",
    "LinearMapRep",
    "LoyaltyResult",
    "MapError",
    "MoritaContext",
    "PredicateNotSatisfied",
    "ProperTraceForm",
    "RATIONAL",
    "RingDescriptor",
    "assemble_gma",
    "build_diagonal_pair",
    "build_full_matrix",
    "build_inflated",
    "build_peirce",
    "build_upper_triangular",
    "check_loyal",
    "check_morita_axioms",
    "decompose_lie_triple_iso",
    "decompose_trace_constructive",
    "decompose_trace_generic",
    "extract_components",
    "extract_constructive_witness",
    "hypothesis_report",
    "is_centralizing_linear",
    "is_centralizing_trace",
    "is_commuting_linear",
    "is_commuting_trace",
    "is_jordan_hom",
    "is_lie_triple_hom",
    "load_context",
    "load_map",
    "make_matrix_algebra",
    "make_triangular_algebra",
    "prime_field",
    "random_lie_triple_iso",
    "random_proper_trace",
    "save_context",
    "save_map",
    "trace_space",
]
