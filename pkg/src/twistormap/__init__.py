"""Harmonicity and minimality of the twistor section of homogeneous almost Hermitian 4-manifolds."""

from .catalog import PRESETS, Preset, compare, get_preset
from .classifier import Analysis, Verdict, analyze
from .config import DEFAULT_TOL, TOL_ENV_VAR
from .curvature import FrameManifold, curvature, levi_civita
from .errors import TwistorMapError, ValidationError
from .frame_algebra import Bivector, SelfDualTriple, cross, hodge_star, selfdual_basis, wedge
from .hermitian import StructureClass, hermitian_data

__all__ = [
    "PRESETS",
    "Preset",
    "compare",
    "get_preset",
    "Analysis",
    "Verdict",
    "analyze",
    "DEFAULT_TOL",
    "TOL_ENV_VAR",
    "FrameManifold",
    "curvature",
    "levi_civita",
    "TwistorMapError",
    "ValidationError",
    "Bivector",
    "SelfDualTriple",
    "cross",
    "hodge_star",
    "selfdual_basis",
    "wedge",
    "StructureClass",
    "hermitian_data",
]
__version__ = "0.1.0"
