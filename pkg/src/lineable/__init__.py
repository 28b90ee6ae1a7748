"""Certified infinite-dimensional subspaces inside zero sets of homogeneous polynomials."""

from .builder import (
    RunConfig,
    build_intersection,
    build_multilinear,
    build_through_point,
    build_zero_space,
    enumerate_derived,
    vanishing_subspace,
)
from .certificate import Certificate
from .polynomials import (
    FiniteTypePoly,
    HomPoly,
    MultiIndex,
    MultilinearForm,
    SparseVector,
    TailRule,
    derived_poly,
    directional_derivative,
    evaluate,
    finite_type_to_hompoly,
    full_polarization,
    multilinear_eval,
    parse_hompoly,
    restrict_to_span,
    vanishes_on_span,
)
from .scalars import Field, GaussianRational, Tolerance, UniPoly, gauss
from .spaces import SeedSpace, Subspace, direct_complement, exact_rank, full_space, kernel_within
from .verify import verify_certificate

__all__ = [
    "build_intersection",
    "build_multilinear",
    "build_through_point",
    "build_zero_space",
    "Certificate",
    "derived_poly",
    "direct_complement",
    "directional_derivative",
    "enumerate_derived",
    "evaluate",
    "exact_rank",
    "Field",
    "finite_type_to_hompoly",
    "FiniteTypePoly",
    "full_polarization",
    "full_space",
    "gauss",
    "GaussianRational",
    "HomPoly",
    "kernel_within",
    "MultiIndex",
    "multilinear_eval",
    "MultilinearForm",
    "parse_hompoly",
    "restrict_to_span",
    "RunConfig",
    "SeedSpace",
    "SparseVector",
    "Subspace",
    "TailRule",
    "Tolerance",
    "UniPoly",
    "vanishes_on_span",
    "vanishing_subspace",
    "verify_certificate",
]

__version__ = "0.1.0"
