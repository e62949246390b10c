"""The six families of flat Lorentzian Lie algebras and their extension data."""

from .builders import build_model, layout_for
from .extension import ExtensionData, curvature_system_check, generalized_extension, novikov_system_check
from .rotation import RotationRep, make_rotation_rep
from .specs import FAMILIES, spec_from_dict, spec_to_dict, validate_model_params

__all__ = [
    "FAMILIES",
    "ExtensionData",
    "RotationRep",
    "build_model",
    "curvature_system_check",
    "generalized_extension",
    "layout_for",
    "make_rotation_rep",
    "novikov_system_check",
    "spec_from_dict",
    "spec_to_dict",
    "validate_model_params",
]
