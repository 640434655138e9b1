"""Dipole (DSM) and point-charge (MFS) approximations of harmonic functions.

A DSM potential is the real part of the rational function
``F(z) = sum_k Q_k n_k / (z - zeta_k)``, so its harmonic conjugate is simply
``Im F`` and is single valued around every hole.  The MFS potential
``sum_k Q_k log|z - zeta_k|`` is kept as a baseline; its conjugate picks up
``2 pi sum Q_k`` around each hole and is not provided here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import BoundaryCurve
from .linsolve import SolveReport, solve


class Kernel(str, enum.Enum):
    DSM = "dsm"
    MFS = "mfs"


class SingularKernelError(ValueError):
    """An evaluation point coincides with a singular point."""


class UnsupportedKernelError(TypeError):
    pass


def _diff(z, zeta) -> np.ndarray:
    d = np.asarray(z, dtype=complex)[..., None] - np.asarray(zeta, dtype=complex)
    hit = np.argwhere(d == 0)
    if hit.size:
        raise SingularKernelError(f"evaluation point coincides with singular point {tuple(hit[0])}")
    return d


def dsm_entry(z, zeta, n) -> float:
    """``Re(n / (z - zeta))``, the normal derivative of ``log|z - zeta|`` at zeta."""
    return float(np.real(n / _diff(z, zeta)).squeeze())


def mfs_entry(z, zeta) -> float:
    return float(np.log(np.abs(_diff(z, zeta))).squeeze())


def assemble(kernel: Kernel, colloc, singular, moments=None) -> np.ndarray:
    """Collocation matrix ``G[j, k]``; the DSM entry uses ``z_j - zeta_k``."""
    d = _diff(np.atleast_1d(colloc), np.atleast_1d(singular))
    if Kernel(kernel) is Kernel.DSM:
        if moments is None:
            raise ValueError("DSM assembly needs dipole moments")
        return np.real(np.atleast_1d(moments) / d)
    return np.log(np.abs(d))


@dataclass(frozen=True, eq=False)
class ChargeSystem:
    kernel: Kernel
    singular: np.ndarray
    coeffs: np.ndarray
    moments: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "kernel", Kernel(self.kernel))
        object.__setattr__(self, "singular", np.asarray(self.singular, dtype=complex).ravel())
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float).ravel())
        if self.moments is not None:
            object.__setattr__(self, "moments", np.asarray(self.moments, dtype=complex).ravel())
        if self.singular.shape != self.coeffs.shape:
            raise ValueError("singular points and coefficients differ in length")
        if self.kernel is Kernel.DSM:
            if self.moments is None or self.moments.shape != self.singular.shape:
                raise ValueError("DSM system needs one moment per singular point")
            if not np.allclose(np.abs(self.moments), 1.0, rtol=0, atol=1e-12):
                raise ValueError("DSM moments must be unit vectors")

    def __len__(self):
        return self.singular.size

    def holomorphic(self, z) -> np.ndarray:
        """``F(z) = sum Q_k n_k / (z - zeta_k)`` (DSM only)."""
        if self.kernel is not Kernel.DSM:
            raise UnsupportedKernelError("MFS potentials have no single-valued complex form")
        return (self.coeffs * self.moments / _diff(z, self.singular)).sum(axis=-1)

    def derivative(self, z) -> np.ndarray:
        """Derivative of the complex potential; ``u_x - i u_y``."""
        d = _diff(z, self.singular)
        if self.kernel is Kernel.DSM:
            return -(self.coeffs * self.moments / d ** 2).sum(axis=-1)
        return (self.coeffs / d).sum(axis=-1)

    def potential(self, z) -> np.ndarray:
        d = _diff(z, self.singular)
        if self.kernel is Kernel.DSM:
            return (self.coeffs * np.real(self.moments / d)).sum(axis=-1)
        return (self.coeffs * np.log(np.abs(d))).sum(axis=-1)

    def conjugate(self, z) -> np.ndarray:
        return np.imag(self.holomorphic(z))


def _scalar(v):
    return v.item() if np.ndim(v) == 0 else v


def eval_potential(sys: ChargeSystem, z):
    return _scalar(sys.potential(z))


def eval_conjugate(sys: ChargeSystem, z):
    """``Im sum Q_k n_k / (z - zeta_k)``; defined for DSM systems only."""
    if sys.kernel is not Kernel.DSM:
        raise UnsupportedKernelError("conjugate of an MFS potential needs branch tracking")
    return _scalar(sys.conjugate(z))


def solve_dirichlet(kernel: Kernel, colloc, singular, rhs, moments=None) -> tuple[ChargeSystem, SolveReport]:
    G = assemble(kernel, colloc, singular, moments)
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != (G.shape[0],):
        raise ValueError("rhs length must match the number of collocation points")
    Q, report = solve(G, rhs)
    return ChargeSystem(kernel, singular, Q, moments), report


def conjugate_period(sys: ChargeSystem, loop: BoundaryCurve, samples: int = 1024) -> float:
    """``\\oint (-u_y dx + u_x dy)`` along ``loop`` by the trapezoid rule.

    The integrand equals ``Im(F'(z) dz)`` with ``F' = u_x - i u_y``.
    """
    if samples < 1024:
        raise ValueError("use at least 1024 samples")
    tau = np.arange(samples) / samples
    z = loop(tau)
    gap = np.abs(z[:, None] - sys.singular[None, :]).min()
    if gap < 1e-6:
        raise SingularKernelError(f"loop passes within {gap:.1e} of a singular point")
    dz = np.asarray(loop.deriv(tau), dtype=complex)
    return float(np.mean(np.imag(sys.derivative(z) * dz)))
