"""Fuzzy centroid models for assessing and comparing grade distributions."""

__version__ = "0.1.0"

from .errors import AssessmentError
from .ingest import GradeDataset, distributions_for, normalize, parse_dataset
from .model import (
    Centroid,
    Decision,
    GradeDistribution,
    GradeScale,
    ModelSpec,
    Rule,
    ShapeKind,
    Verdict,
    centroid,
    compare,
    extremes,
    gpa,
    gpa_xc_identity,
    make_model,
    sum_squares_lower_bound,
)
from .oracle import RectangleRegion, integral_centroid, layout, particle_centroid
from .report import render_report

__all__ = [
    "AssessmentError",
    "Centroid",
    "Decision",
    "GradeDataset",
    "GradeDistribution",
    "GradeScale",
    "ModelSpec",
    "RectangleRegion",
    "Rule",
    "ShapeKind",
    "Verdict",
    "centroid",
    "compare",
    "distributions_for",
    "extremes",
    "gpa",
    "gpa_xc_identity",
    "integral_centroid",
    "layout",
    "make_model",
    "normalize",
    "parse_dataset",
    "particle_centroid",
    "render_report",
    "sum_squares_lower_bound",
]
