"""Exact computational algebra for Morita contexts, torsion theories and
category equivalences over finite-dimensional algebras."""

from .algebra import Algebra, Ideal, full_matrix_algebra, upper_triangular_algebra
from .context import (
    MoritaContext,
    compose_contexts,
    contexts_isomorphic,
    corner_context,
    identity_context,
    is_strict,
    trace_ideals,
)
from .equivalence import (
    Catalog,
    Report,
    build_catalog,
    verify_kato_muller,
    verify_one_epi,
    verify_projective_equivalence,
    verify_strict_equivalence,
)
from .exactlin import QQ, Basis, Field, Matrix
from .graded import (
    FiniteGroup,
    GradedAlgebra,
    GradedContext,
    GradedModule,
    build_graded_catalog,
    graded_corner_context,
    suspension,
    verify_graded_kato_muller,
)
from .modules import Bimodule, LeftModule, RightModule, is_isomorphic, regular_module
from .torsion import TorsionTheory, is_closed, localize
from .workspace import Workspace, parse_workspace

__all__ = [
    "Algebra", "Basis", "Bimodule", "Catalog", "Field", "FiniteGroup",
    "GradedAlgebra", "GradedContext", "GradedModule", "Ideal", "LeftModule",
    "Matrix", "MoritaContext", "QQ", "Report", "RightModule", "TorsionTheory",
    "Workspace", "build_catalog", "build_graded_catalog", "compose_contexts",
    "contexts_isomorphic", "corner_context", "full_matrix_algebra",
    "graded_corner_context", "identity_context", "is_closed", "is_isomorphic",
    "is_strict", "localize", "parse_workspace", "regular_module", "suspension",
    "trace_ideals", "upper_triangular_algebra", "verify_kato_muller",
    "verify_one_epi", "verify_projective_equivalence",
    "verify_strict_equivalence", "verify_graded_kato_muller",
]
