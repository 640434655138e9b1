"""Backward maps as rational functions ``f_*(w) = sum_k Q_k / (w - xi_k)``.

The collocation data is the boundary correspondence of a forward map:
``f_*(w_j) = z_j`` with ``w_j = f(z_j)``.  Poles are placed with Amano's rule
applied to the computed images ``w_j``, outward from the unit circle and, for
the annulus, inward from the inner circle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrangement import ArrangementError, PointConfig, amano_singular
from .forward import BoundaryCorrespondence
from .linsolve import SolveReport, solve
from .potential import SingularKernelError


@dataclass(frozen=True, eq=False)
class BackwardMap:
    poles: np.ndarray
    coeffs: np.ndarray
    groups: tuple[int, ...]
    inner_radius: float | None = None   # None for the disk

    @property
    def canonical(self) -> str:
        return "disk" if self.inner_radius is None else "annulus"

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        out = (self.coeffs / _diff(w, self.poles)).sum(axis=-1)
        return out.item() if out.ndim == 0 else out

    def derivative(self, w):
        w = np.asarray(w, dtype=complex)
        return -(self.coeffs / _diff(w, self.poles) ** 2).sum(axis=-1)


def _diff(w, xi) -> np.ndarray:
    d = np.asarray(w, dtype=complex)[..., None] - xi
    if np.any(d == 0):
        raise SingularKernelError("evaluation point coincides with a pole")
    return d


def cdsm_assemble(colloc_w, poles) -> np.ndarray:
    """``G[j, k] = 1 / (w_j - xi_k)``."""
    return 1.0 / _diff(np.atleast_1d(colloc_w), np.atleast_1d(np.asarray(poles, dtype=complex)))


def _place_poles(w: np.ndarray, r: float, outside_of: float | None, inside_of: float | None) -> np.ndarray:
    """Amano offset with the sign that puts every pole on the requested side."""

    def ok(xi):
        if outside_of is not None:
            return np.abs(xi) > outside_of
        return np.abs(xi) < inside_of

    first = 1.0 if outside_of is not None else -1.0
    bad = None
    for sign in (first, -first):
        xi = amano_singular(w, sign * abs(r))
        good = ok(xi)
        if good.all():
            return xi
        if bad is None:
            bad = int(np.flatnonzero(~good)[0])
    side = "outside the unit circle" if outside_of is not None else f"inside |w| = {inside_of:.6g}"
    raise ArrangementError(f"pole {bad} cannot be placed {side}")


def build_backward(corr: BoundaryCorrespondence, config: PointConfig) -> tuple[BackwardMap, SolveReport]:
    """CDSM fit of the inverse map from a forward boundary correspondence.

    One boundary component gives the disk; two give the annulus
    ``R < |w| < 1`` with ``R`` taken from the correspondence.
    """
    n = len(corr.w)
    if n not in (1, 2):
        raise ValueError("backward maps are supported for simply and doubly connected regions")
    r = config.rtilde_b * config.N
    inner = None
    poles = [_place_poles(corr.w[0], r, outside_of=1.0, inside_of=None)]
    if n == 2:
        inner = float(corr.moduli[0])
        poles.append(_place_poles(corr.w[1], r, outside_of=None, inside_of=inner))
    xi = np.concatenate(poles)
    w = np.concatenate(corr.w)
    z = np.concatenate(corr.z)
    Q, report = solve(cdsm_assemble(w, xi), z)
    return BackwardMap(xi, Q, tuple(len(p) for p in poles), inner), report


def eval_backward(bmap: BackwardMap, w):
    return bmap(w)
