"""Exterior-calculus verification kernel."""

from .flat import FLAT_NAMES, flat_model_rules, verify_flat_model, zero_rules
from .forms import (
    DifferentialRule,
    GeneratorMismatch,
    InvariantForm,
    UndefinedGenerator,
    change_coframe,
    d,
    substitute,
    wedge,
)
from .pipelines import (
    COFRAME_NAMES,
    rules_from_adY,
    rules_from_structure_constants,
    shifted_rules,
    verify_curvature_equations,
    verify_structure_equations,
)
from .report import Report, VerificationError

__all__ = [
    "COFRAME_NAMES", "DifferentialRule", "FLAT_NAMES", "GeneratorMismatch", "InvariantForm",
    "Report", "UndefinedGenerator", "VerificationError", "change_coframe", "d",
    "flat_model_rules", "rules_from_adY", "rules_from_structure_constants", "shifted_rules",
    "substitute", "verify_curvature_equations", "verify_flat_model",
    "verify_structure_equations", "wedge", "zero_rules",
]
