"""Deciding whether a spatial curve projects onto a planar curve."""

from .decide import ProjectionDecision, ProjectionVerdict, Witness, decide_central, decide_parallel
from .family import FamilyCurve, FamilyKind, candidate_checks, family, match_constant_signature, match_curve_signature
from .matrix import ProjectionMatrix, assemble_projection, normal_form, verify_projection

__all__ = [
    "FamilyCurve",
    "FamilyKind",
    "ProjectionDecision",
    "ProjectionMatrix",
    "ProjectionVerdict",
    "Witness",
    "assemble_projection",
    "candidate_checks",
    "decide_central",
    "decide_parallel",
    "family",
    "match_constant_signature",
    "match_curve_signature",
    "normal_form",
    "verify_projection",
]
