"""Exact classification and Cartan curvature of invariant path structures
on three-dimensional Lie groups."""

from .algebra import BianchiType, StructureConstants, classify_bianchi, jacobi_check, killing_form
from .catalog import TableRow, builtin_tables, regenerate_tables
from .exterior import (
    DifferentialRule,
    InvariantForm,
    VerificationError,
    d,
    verify_curvature_equations,
    verify_flat_model,
    verify_structure_equations,
    wedge,
)
from .pathstruct import (
    AdYMatrix,
    JacobiViolation,
    NormalForm,
    bianchi_type,
    normalize,
    reorder,
    scale_action,
    to_structure_constants,
    validate,
)
from .rational import RationalFormatError, format_rat, parse_rat
from .sl2geo import LinePair, Sl2Vector, cross_ratio, locally_isomorphic, pair_to_path_structure
from .strict import compute_strict, curvature_direct, curvature_via_embedding, flatness_indicator
from .transform import (
    ConnectionComponents,
    CurvatureTuple,
    GroupElement,
    conjugation_oracle,
    reduction_scale_solve,
    transform_components,
    transform_curvature,
)

__version__ = "0.1.0"

__all__ = [
    "AdYMatrix", "BianchiType", "ConnectionComponents", "CurvatureTuple", "DifferentialRule",
    "GroupElement", "InvariantForm", "JacobiViolation", "LinePair", "NormalForm",
    "RationalFormatError", "Sl2Vector", "StructureConstants", "TableRow", "VerificationError",
    "bianchi_type", "builtin_tables", "classify_bianchi", "compute_strict", "conjugation_oracle",
    "cross_ratio", "curvature_direct", "curvature_via_embedding", "d", "flatness_indicator",
    "format_rat", "jacobi_check", "killing_form", "locally_isomorphic", "normalize",
    "pair_to_path_structure", "parse_rat", "reduction_scale_solve", "regenerate_tables",
    "reorder", "scale_action", "to_structure_constants", "transform_components",
    "transform_curvature", "validate", "verify_curvature_equations", "verify_flat_model",
    "verify_structure_equations", "wedge",
]
