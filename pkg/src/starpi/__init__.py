"""Exact computation with *-polynomial identities of upper triangular matrices.

The central object is the algebra A of 4x4 upper triangular matrices with
zero (2,3) entry under the reflection involution.  The package evaluates
polynomials in symmetric (y) and skew (z) variables on generic elements,
builds the multilinear components of an explicitly generated T(*)-ideal I,
and compares the two degree by degree.
"""

from .exact import Echelon, Indeterminate, ScalarPoly, SparseMatrixQ, in_span, kernel_basis, rank
from .free import Kind, NCPoly, Variable, commutator, involute, substitute, y, z
from .identities import (
    BoundExceeded,
    EngineConfig,
    MultilinearSpace,
    Verdict,
    identity_kernel,
    independence_rank,
    is_star_identity,
)
from .matrices import A, B, UT2, UT4, UTMat, evaluate, generic_element, get_spec, mat_star
from .parse import ParseError, format_poly, parse_poly
from .tideal import ideal_contains, ideal_dim, multilinear_consequences, verify_main_theorem

__version__ = "0.1.0"

__all__ = [
    "A", "B", "UT2", "UT4", "BoundExceeded", "Echelon", "EngineConfig", "Indeterminate", "Kind",
    "MultilinearSpace", "NCPoly", "ParseError", "ScalarPoly", "SparseMatrixQ", "UTMat", "Variable", "Verdict",
    "commutator", "evaluate", "format_poly", "generic_element", "get_spec", "ideal_contains", "ideal_dim",
    "identity_kernel", "in_span", "independence_rank", "involute", "is_star_identity", "kernel_basis",
    "mat_star", "multilinear_consequences", "parse_poly", "rank", "substitute", "verify_main_theorem", "y", "z",
]
