"""Collocation points, singular points and dipole moments.

Singular points follow Amano's rule: each collocation point is pushed along
``-i (z_{k+1} - z_{k-1})``, which for a positively oriented curve is the
outward normal direction.  Offsets are given in the scaled form ``r = rtilde * N``
because neighbouring collocation points are O(1/N) apart.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import TWO_PI, BoundaryCurve

EXTERIOR = "exterior"
INTERIOR = "interior"


class ArrangementError(ValueError):
    """Singular points collide or land on the wrong side of a boundary."""


@dataclass(frozen=True)
class PointConfig:
    N: int
    rtilde_f: float = 0.2
    rtilde_b: float = 0.1

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 4:
            raise ValueError("N must be an integer >= 4")
        if not (self.rtilde_f > 0 and self.rtilde_b > 0):
            raise ValueError("rtilde values must be positive")


@dataclass(frozen=True, eq=False)
class ArrangedSet:
    colloc: np.ndarray
    singular: np.ndarray
    moments: np.ndarray

    def __len__(self):
        return len(self.colloc)


def collocation_points(curve: BoundaryCurve, N: int) -> np.ndarray:
    """``z_j = curve(j / N)`` for j = 1..N (so the last point is ``curve(0)``)."""
    if N < 4:
        raise ValueError("N must be >= 4")
    return curve(np.arange(1, N + 1) / N)


def amano_singular(colloc, r: float) -> np.ndarray:
    z = np.asarray(colloc, dtype=complex)
    if z.size < 3:
        raise ValueError("need at least three points")
    return z - 0.5j * r * (np.roll(z, -1) - np.roll(z, 1))


def amano_moments(singular) -> np.ndarray:
    """``n_k = -i (zeta_{k+1} - zeta_{k-1}) / |zeta_{k+1} - zeta_{k-1}|``."""
    zeta = np.asarray(singular, dtype=complex)
    if zeta.size < 3:
        raise ValueError("need at least three points")
    chord = np.roll(zeta, -1) - np.roll(zeta, 1)
    bad = np.flatnonzero(np.abs(chord) == 0)
    if bad.size:
        raise ArrangementError(f"degenerate arrangement: neighbours of index {bad[0]} coincide")
    return -1j * chord / np.abs(chord)


def _side_violations(curve: BoundaryCurve, pts: np.ndarray, side: str) -> np.ndarray:
    inside = curve.encloses(pts)
    return np.flatnonzero(inside if side == EXTERIOR else ~inside)


def offset_to_side(curve: BoundaryCurve, colloc: np.ndarray, r: float, side: str) -> np.ndarray:
    """Amano offset with |r|, sign picked by a containment test."""
    if side not in (EXTERIOR, INTERIOR):
        raise ValueError(f"unknown side {side!r}")
    first = 1.0 if side == EXTERIOR else -1.0
    bad = None
    for sign in (first, -first):
        zeta = amano_singular(colloc, sign * abs(r))
        violations = _side_violations(curve, zeta, side)
        if violations.size == 0:
            return zeta
        if bad is None:
            bad = violations
    raise ArrangementError(f"singular point {bad[0]} is on the wrong side ({side}) of {curve.name}")


def arrange_component(curve: BoundaryCurve, N: int, rtilde: float, side: str = EXTERIOR) -> ArrangedSet:
    z = collocation_points(curve, N)
    zeta = offset_to_side(curve, z, rtilde * N, side)
    n = amano_moments(zeta)
    if not np.allclose(np.abs(n), 1.0, rtol=0, atol=1e-12):
        raise ArrangementError("moments are not unit vectors")
    return ArrangedSet(z, zeta, n)


def conformal_singular(psi: Callable[[np.ndarray], np.ndarray], R: float, N: int) -> np.ndarray:
    """``zeta_k = psi(R exp(2 pi i k / N))``, k = 1..N."""
    k = np.arange(1, N + 1)
    return np.asarray(psi(R * np.exp(1j * TWO_PI * k / N)), dtype=complex)


def amano_radius_for(R: float, N: int) -> float:
    """Offset ``r`` whose Amano arrangement matches ``psi(R omega^k)`` to first order."""
    return (R - 1.0) / np.sin(TWO_PI / N)


def arrangement_deviation(psi: Callable, delta: float, N: int) -> float:
    """``max_k |zeta_k^C(1 + delta) - zeta_k^A(delta / sin(2 pi / N))|``.

    Collocation points are ``psi(omega^k)``; ``psi`` must be a peripheral
    conformal map with reference radius 1.
    """
    k = np.arange(1, N + 1)
    z = np.asarray(psi(np.exp(1j * TWO_PI * k / N)), dtype=complex)
    amano = amano_singular(z, amano_radius_for(1.0 + delta, N))
    return float(np.abs(conformal_singular(psi, 1.0 + delta, N) - amano).max())
