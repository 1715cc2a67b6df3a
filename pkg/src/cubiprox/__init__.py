"""Closed-form real roots of cubics and the proximal maps, conjugates and
projections that reduce to them."""
from ._backend import BACKEND
from .cubic import (
    Branch,
    Cubic,
    DepressedCubic,
    MonotoneInterval,
    RealRootSet,
    RootKind,
    Trichotomy,
    classify,
    evaluate,
    monotone_intervals,
    residual_scale,
    solve_depressed,
    solve_general,
    solve_many,
)
from .epigraph import EpiProjection, project_epigraph
from .errors import (
    ConsistencyError,
    CubiproxError,
    DegenerateDegreeError,
    DomainError,
    PreconditionError,
)
from .perspective import PerspectiveProxResult, prox_perspective
from .points import LabeledPoint
from .quartic import (
    ConjugateValue,
    ConvexQuartic,
    conjugate,
    is_convex,
    prox,
    prox_geometric,
    prox_pure_quartic,
)
from .reciprocal import ReciprocalFn, conjugate_reciprocal, prox_reciprocal
from .saddle import SaddleCase, SaddleProjection, SaddleSet, project_antidiag, project_diag

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Branch",
    "ConjugateValue",
    "ConsistencyError",
    "ConvexQuartic",
    "Cubic",
    "CubiproxError",
    "DegenerateDegreeError",
    "DepressedCubic",
    "DomainError",
    "EpiProjection",
    "LabeledPoint",
    "MonotoneInterval",
    "PerspectiveProxResult",
    "PreconditionError",
    "RealRootSet",
    "ReciprocalFn",
    "RootKind",
    "SaddleCase",
    "SaddleProjection",
    "SaddleSet",
    "Trichotomy",
    "classify",
    "conjugate",
    "conjugate_reciprocal",
    "evaluate",
    "is_convex",
    "monotone_intervals",
    "project_antidiag",
    "project_diag",
    "project_epigraph",
    "prox",
    "prox_geometric",
    "prox_perspective",
    "prox_pure_quartic",
    "prox_reciprocal",
    "residual_scale",
    "solve_depressed",
    "solve_general",
    "solve_many",
]
