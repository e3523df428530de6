"""Exact homology, cohomology and cohomology operations of simplicial complexes.

Homology comes from an algebraic minimal model (a contraction of the
simplicial chain complex onto a minimal one built by Smith normal form).
Steenrod squares, the odd-prime power P_1 and Adem's secondary operation
are evaluated at cochain level and read back through that contraction.
"""
from .exact_algebra import Matrix, SnfDecomposition, kernel_basis, rank, smith_normal_form, solve_in_span
from .simplicial import (
    ComplexParseError,
    SimplicialComplex,
    boundary_matrix,
    closure_from_maximal,
    collapse_thin,
    format_complex,
    parse_complex,
)
from .complexes import (
    Chain,
    ChainComplex,
    Cochain,
    Contraction,
    boundary,
    check_contraction,
    coboundary,
    compose_contractions,
    dualize_contraction,
)
from .minimal_model import (
    GroupPresentation,
    MinimalModel,
    build_minimal_model,
    cohomology_basis,
    homology_presentations,
    integral_cohomology,
    minimal_model,
)
from .cochain_ops import cup, cup_i, e3_cochain, eta_cochain, p1_cochain, psi_cochain, sq_cochain
from .cohomology_ops import (
    ConsistencyError,
    OperationMatrix,
    SecondaryValue,
    adem_secondary,
    operation_matrix,
    p1_matrix,
    sq2_kernel,
    sq_matrix,
)

__version__ = "0.1.0"
