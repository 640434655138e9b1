"""Boundary curves and plane regions.

Every curve is stored positively oriented (counter-clockwise) and is
parameterized over ``tau in [0, 1)``.  Regions keep the outer boundary first
and the hole boundaries after it; for the multiply-connected solvers the last
hole is the one that contains the base point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

TWO_PI = 2.0 * np.pi

_CLOSURE_TOL = 1e-12
_AMBIGUITY_TOL = 1e-9
_CHUNK = 512


class GeometryError(ValueError):
    """Invalid curve or region."""


class BoundaryAmbiguousError(GeometryError):
    """A query point is too close to a boundary sample to classify."""


def _as_complex(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise GeometryError("non-finite coordinates")
    return z


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """A closed, regular, positively oriented curve ``tau -> param(tau)``."""

    param: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    name: str = "curve"

    def __post_init__(self):
        tau = np.arange(64) / 64
        z = np.asarray(self.param(tau), dtype=complex)
        dz = np.asarray(self.deriv(tau), dtype=complex)
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(dz))):
            raise GeometryError(f"{self.name}: non-finite samples")
        scale = max(1.0, float(np.abs(z).max()))
        end = complex(self.param(np.array([1.0]))[0])
        if abs(end - z[0]) > _CLOSURE_TOL * scale:
            raise GeometryError(f"{self.name}: curve is not closed")
        if np.any(np.abs(dz) == 0.0):
            raise GeometryError(f"{self.name}: derivative vanishes")

    def __call__(self, tau):
        return np.asarray(self.param(np.asarray(tau, dtype=float)), dtype=complex)

    @property
    def orientation(self) -> str:
        return "positive" if self.signed_area() > 0 else "negative"

    def sample(self, M: int, offset: float = 0.0) -> np.ndarray:
        """``M`` points at ``tau = (m + offset) / M``, m = 0..M-1."""
        return self((np.arange(M) + offset) / M)

    def signed_area(self, M: int = 2048) -> float:
        tau = np.arange(M) / M
        z = self(tau)
        dz = np.asarray(self.deriv(tau), dtype=complex)
        # 1/2 \oint (x dy - y dx), trapezoid on the periodic integrand
        return 0.5 * float(np.mean(np.imag(np.conj(z) * dz)))

    def winding_number(self, z, samples: int = 1024) -> np.ndarray:
        """Discrete argument sum of the sampled polygon around each point."""
        z = np.asarray(z, dtype=complex)
        pts = self.sample(samples)
        flat = z.ravel()
        turn = np.empty(flat.shape)
        for lo in range(0, flat.size, _CHUNK):
            d = pts[None, :] - flat[lo:lo + _CHUNK, None]
            turn[lo:lo + _CHUNK] = np.angle(np.roll(d, -1, axis=1) / d).sum(axis=1)
        return (turn / TWO_PI).reshape(z.shape)

    def distance_to_samples(self, z, samples: int = 1024) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        pts = self.sample(samples)
        flat = z.ravel()
        dist = np.empty(flat.shape)
        for lo in range(0, flat.size, _CHUNK):
            dist[lo:lo + _CHUNK] = np.abs(pts[None, :] - flat[lo:lo + _CHUNK, None]).min(axis=1)
        return dist.reshape(z.shape)

    def encloses(self, z, samples: int = 1024) -> np.ndarray:
        return np.abs(self.winding_number(z, samples)) > 0.5


def circle(center: complex = 0.0, radius: float = 1.0) -> BoundaryCurve:
    if not radius > 0:
        raise GeometryError("radius must be positive")
    center = complex(center)

    def param(tau):
        return center + radius * np.exp(1j * TWO_PI * tau)

    def deriv(tau):
        return 1j * TWO_PI * radius * np.exp(1j * TWO_PI * tau)

    return BoundaryCurve(param, deriv, name=f"circle({center}, {radius})")


def cassini_oval(a: float, scale: float = 1.0) -> BoundaryCurve:
    """The single-loop oval ``|z^2 - scale^2| = (a*scale)^2`` in polar form.

    ``r(phi) = sqrt(cos 2phi + sqrt(a^4 - sin^2 2phi))`` is single valued for
    every ``a > 1``; for ``a <= 1`` the level set splits into two loops.
    """
    if not a > 1:
        raise GeometryError("cassini_oval needs a > 1 (single loop)")
    if not scale > 0:
        raise GeometryError("scale must be positive")
    a4 = a ** 4

    def radius(phi):
        s2 = np.sin(2 * phi)
        root = np.sqrt(a4 - s2 ** 2)
        r = np.sqrt(np.cos(2 * phi) + root)
        dr = -s2 * (1.0 + np.cos(2 * phi) / root) / r
        return r, dr

    def param(tau):
        phi = TWO_PI * np.asarray(tau, dtype=float)
        r, _ = radius(phi)
        return scale * r * np.exp(1j * phi)

    def deriv(tau):
        phi = TWO_PI * np.asarray(tau, dtype=float)
        r, dr = radius(phi)
        return TWO_PI * scale * (dr + 1j * r) * np.exp(1j * phi)

    return BoundaryCurve(param, deriv, name=f"cassini_oval({a}, {scale})")


def cassini_level_curve(a: float, b: float) -> BoundaryCurve:
    """``|z^2 - b^2| = a^2``, realized as ``b * cassini_oval(a / b)``."""
    if not (a > 0 and b > 0):
        raise GeometryError("a and b must be positive")
    return cassini_oval(a / b, scale=b)


@dataclass(frozen=True, eq=False)
class Region:
    """Outer boundary first, then holes.  Connectivity is the component count."""

    components: tuple[BoundaryCurve, ...]
    kind: str = "custom"

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise GeometryError("region needs at least one boundary")
        for c in comps:
            if c.signed_area() <= 0:
                raise GeometryError(f"{c.name}: boundary must be positively oriented")
        outer = comps[0]
        for i, hole in enumerate(comps[1:], start=1):
            pts = hole.sample(256)
            if not np.all(outer.encloses(pts)):
                raise GeometryError(f"hole {i} is not inside the outer boundary")
            for j, other in enumerate(comps[1:], start=1):
                if j != i and np.any(other.encloses(pts)):
                    raise GeometryError(f"holes {i} and {j} overlap")

    @property
    def connectivity(self) -> int:
        return len(self.components)

    @property
    def outer(self) -> BoundaryCurve:
        return self.components[0]

    @property
    def holes(self) -> tuple[BoundaryCurve, ...]:
        return self.components[1:]

    def classify(self, z, samples: int = 1024) -> np.ndarray:
        """Containment test without the ambiguity guard."""
        z = _as_complex(z)
        inside = self.outer.encloses(z, samples)
        for hole in self.holes:
            inside &= ~hole.encloses(z, samples)
        return inside

    def contains(self, z, samples: int = 1024):
        """True where ``z`` lies in the open region.

        Raises BoundaryAmbiguousError when a point sits within 1e-9 of a
        boundary sample.
        """
        z = _as_complex(z)
        for c in self.components:
            if np.any(c.distance_to_samples(z, samples) < _AMBIGUITY_TOL):
                raise BoundaryAmbiguousError("point lies on a sampled boundary")
        inside = self.classify(z, samples)
        return bool(inside) if inside.ndim == 0 else inside

    def bbox(self, samples: int = 1024) -> tuple[float, float, float, float]:
        pts = self.outer.sample(samples)
        return pts.real.min(), pts.real.max(), pts.imag.min(), pts.imag.max()


def disk(center: complex = 0.0, radius: float = 1.0) -> Region:
    return Region((circle(center, radius),), kind="disk")


def annulus(rho: float, center: complex = 0.0) -> Region:
    """Concentric annulus ``rho < |z - center| < 1``."""
    if not 0 < rho < 1:
        raise GeometryError("annulus needs 0 < rho < 1")
    return Region((circle(center, 1.0), circle(center, rho)), kind="annulus")


def cassini_oval_region(a: float) -> Region:
    return Region((cassini_oval(a),), kind="cassini_oval")


def cassini_frame(a1: float, b1: float, a2: float, b2: float) -> Region:
    """``|z^2 - b1^2| < a1^2`` and ``|z^2 - b2^2| > a2^2``."""
    if not (a1 / b1 > 1 and a2 / b2 > 1):
        raise GeometryError("frame boundaries need a/b > 1")
    return Region(
        (cassini_level_curve(a1, b1), cassini_level_curve(a2, b2)),
        kind="cassini_frame",
    )


def multiply_connected(outer: BoundaryCurve, holes: Sequence[BoundaryCurve]) -> Region:
    return Region((outer, *holes), kind="custom")
