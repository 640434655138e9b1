"""Closed-form conformal maps used as oracles.

Square roots are principal branches throughout.  For the parameter ranges
accepted here the branch cuts stay off the closed regions, which the tests
confirm on boundary samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import geometry
from .geometry import Region


class NoExactMapError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ExactMapCase:
    name: str
    params: dict
    region: Region
    z0: complex
    forward: Callable[[np.ndarray], np.ndarray]
    backward: Callable[[np.ndarray], np.ndarray]
    modulus: Optional[float] = None
    radii: tuple[float, ...] = field(default=(1.0,))

    @property
    def doubly_connected(self) -> bool:
        return self.modulus is not None


def mobius_case(z0: complex) -> ExactMapCase:
    """Unit disk onto itself with ``f(z0) = 0`` and ``f'(z0) > 0``."""
    z0 = complex(z0)
    if abs(z0) >= 1:
        raise NoExactMapError("base point must satisfy |z0| < 1")
    c = z0.conjugate()

    def forward(z):
        z = np.asarray(z, dtype=complex)
        return (z - z0) / (1 - c * z)

    def backward(w):
        w = np.asarray(w, dtype=complex)
        return (w + z0) / (1 + c * w)

    return ExactMapCase("disk_mobius", {"z0": z0}, geometry.disk(), z0, forward, backward)


def disk_case(z0: complex, center: complex = 0.0, radius: float = 1.0) -> ExactMapCase:
    """Möbius map for an arbitrary disk, via the affine change to the unit disk."""
    center = complex(center)
    unit = mobius_case((complex(z0) - center) / radius)

    def forward(z):
        return unit.forward((np.asarray(z, dtype=complex) - center) / radius)

    def backward(w):
        return center + radius * unit.backward(w)

    params = {"z0": complex(z0), "center": center, "radius": radius}
    return ExactMapCase("disk_mobius", params, geometry.disk(center, radius), complex(z0), forward, backward)


def cassini_case(a: float) -> ExactMapCase:
    """``f(z) = a z / sqrt(a^4 - 1 + z^2)`` with base point 0."""
    if not a > 1:
        raise NoExactMapError("Cassini oval needs a > 1")
    a4m1 = a ** 4 - 1

    def forward(z):
        z = np.asarray(z, dtype=complex)
        return a * z / np.sqrt(a4m1 + z * z)

    def backward(w):
        w = np.asarray(w, dtype=complex)
        return np.sqrt(a4m1) * w / np.sqrt(a * a - w * w)

    return ExactMapCase("cassini_oval", {"a": a}, geometry.cassini_oval_region(a), 0j, forward, backward)


def frame_condition(a1: float, b1: float, a2: float, b2: float) -> tuple[float, float]:
    return (a1 ** 4 - b1 ** 4) / b1 ** 2, (a2 ** 4 - b2 ** 4) / b2 ** 2


def frame_case(a1: float, b1: float, a2: float, b2: float) -> ExactMapCase:
    """Cassini frame onto ``rho < |w| < 1``, ``rho = a1 b2 / (a2 b1)``.

    Closed forms exist only when both ovals share ``(a^4 - b^4) / b^2``.
    """
    lhs, rhs = frame_condition(a1, b1, a2, b2)
    if abs(lhs - rhs) > 1e-12 * max(abs(lhs), abs(rhs)):
        raise NoExactMapError(f"frame parameters give {lhs!r} != {rhs!r}; no closed form")
    c = a1 ** 4 - b1 ** 4
    rho = a1 * b2 / (a2 * b1)

    def forward(z):
        z = np.asarray(z, dtype=complex)
        return a1 * z / np.sqrt(b1 * b1 * z * z + c)

    def backward(w):
        w = np.asarray(w, dtype=complex)
        return np.sqrt(c) * w / np.sqrt(a1 * a1 - b1 * b1 * w * w)

    params = {"a1": a1, "b1": b1, "a2": a2, "b2": b2}
    region = geometry.cassini_frame(a1, b1, a2, b2)
    return ExactMapCase("cassini_frame", params, region, 0j, forward, backward, rho, (1.0, rho))


def annulus_case(rho: float) -> ExactMapCase:
    """The concentric annulus is already canonical; with ``z0 = 0`` the map is the identity."""

    def identity(z):
        return np.asarray(z, dtype=complex)

    region = geometry.annulus(rho)
    return ExactMapCase("annulus", {"rho": rho}, region, 0j, identity, identity, rho, (1.0, rho))
