"""Bidirectional numerical conformal mapping.

Forward maps use the dipole simulation method, backward maps the complex
dipole simulation method (rational functions with poles off the canonical
region).
"""

from .arrangement import PointConfig
from .backward import BackwardMap, build_backward
from .forward import ForwardMap, boundary_correspondence, build_forward
from .geometry import BoundaryCurve, Region

__version__ = "0.1.0"

__all__ = [
    "BackwardMap",
    "BoundaryCurve",
    "ForwardMap",
    "PointConfig",
    "Region",
    "boundary_correspondence",
    "build_backward",
    "build_forward",
]
