"""Monodromy classification, parity invariants and local chart calculus for
complex projective structures with Fuchsian-type singularities."""

from .errors import InputError, MathError, ProjStructError
from .kernels import BACKEND
from .moebius import Kind, MoebiusElement, MonodromyClass, classify, normalize_alpha
from .surface_rep import SurfaceRepresentation, lift_sign, minimal_lift, validate_relation

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "InputError",
    "Kind",
    "MathError",
    "MoebiusElement",
    "MonodromyClass",
    "ProjStructError",
    "SurfaceRepresentation",
    "classify",
    "lift_sign",
    "minimal_lift",
    "normalize_alpha",
    "validate_relation",
]
