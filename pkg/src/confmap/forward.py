"""Forward maps ``f(z) = (z - z0) exp[g(z) + i h(z)]`` onto the disk or a slit annulus.

``g`` solves a Dirichlet problem by the dipole simulation method and ``h`` is
read off as the imaginary part of the same rational function.  For an
``n``-connected region the unknown radii enter linearly as ``log R_mu`` and the
system is closed by ``sum_k Q_{nu k} = 0`` on every hole, the same side
conditions used with point charges.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arrangement import EXTERIOR, INTERIOR, ArrangedSet, PointConfig, arrange_component
from .geometry import GeometryError, Region
from .linsolve import SolveReport, solve
from .potential import ChargeSystem, Kernel, assemble, conjugate_period

AMANO_COMPATIBLE = "amano"


@dataclass(frozen=True, eq=False)
class ForwardMap:
    z0: complex
    charges: ChargeSystem
    h_offset: float
    region: Region
    config: PointConfig
    arranged: tuple[ArrangedSet, ...]
    moduli: tuple[float, ...] = ()

    def g(self, z):
        return self.charges.potential(z)

    def h(self, z):
        return self.charges.conjugate(z) - self.h_offset

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = (z - self.z0) * np.exp(self.charges.holomorphic(z) - 1j * self.h_offset)
        return out.item() if out.ndim == 0 else out

    @property
    def colloc(self) -> tuple[np.ndarray, ...]:
        return tuple(a.colloc for a in self.arranged)


@dataclass(frozen=True, eq=False)
class BoundaryCorrespondence:
    """Per boundary component: collocation points and their images."""

    z: tuple[np.ndarray, ...]
    w: tuple[np.ndarray, ...]
    moduli: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if len(self.z) != len(self.w) or any(a.shape != b.shape for a, b in zip(self.z, self.w)):
            raise ValueError("mismatched correspondence lengths")


def dirichlet_data_simply(z0: complex, colloc) -> np.ndarray:
    d = np.abs(np.asarray(colloc, dtype=complex) - z0)
    if np.any(d <= 1e-14 * max(1.0, float(d.max()))):
        raise GeometryError("base point lies on the boundary")
    return -np.log(d)


def _arrange(region: Region, config: PointConfig, rtilde: float) -> tuple[ArrangedSet, ...]:
    sides = (EXTERIOR,) + (INTERIOR,) * (region.connectivity - 1)
    return tuple(arrange_component(c, config.N, rtilde, s) for c, s in zip(region.components, sides))


def solve_harmonic_part(
    region: Region,
    z0: complex,
    config: PointConfig,
    kernel: Kernel = Kernel.DSM,
    arranged: tuple[ArrangedSet, ...] | None = None,
) -> tuple[ChargeSystem, tuple[float, ...], SolveReport]:
    """Collocation solve for ``g`` (and the radii when the region has holes)."""
    kernel = Kernel(kernel)
    if arranged is None:
        arranged = _arrange(region, config, config.rtilde_f)
    n = region.connectivity
    z = np.concatenate([a.colloc for a in arranged])
    zeta = np.concatenate([a.singular for a in arranged])
    moments = np.concatenate([a.moments for a in arranged]) if kernel is Kernel.DSM else None
    rhs = dirichlet_data_simply(z0, z)
    G = assemble(kernel, z, zeta, moments)
    if n == 1:
        Q, report = solve(G, rhs)
        return ChargeSystem(kernel, zeta, Q, moments), (), report

    sizes = [len(a) for a in arranged]
    starts = np.concatenate([[0], np.cumsum(sizes)])
    m = starts[-1]
    A = np.zeros((m + n - 1, m + n - 1))
    b = np.zeros(m + n - 1)
    A[:m, :m] = G
    b[:m] = rhs
    for mu in range(1, n):
        rows = slice(starts[mu], starts[mu + 1])
        A[rows, m + mu - 1] = -1.0          # -log R_mu
        A[m + mu - 1, rows] = 1.0           # sum_k Q_{mu k} = 0
    x, report = solve(A, b)
    moduli = tuple(float(v) for v in np.exp(x[m:]))
    return ChargeSystem(kernel, zeta, x[:m], moments), moduli, report


def build_forward_simply(region: Region, z0: complex, config: PointConfig) -> tuple[ForwardMap, SolveReport]:
    if region.connectivity != 1:
        raise GeometryError("region is not simply connected")
    z0 = complex(z0)
    if not region.contains(z0):
        raise GeometryError("base point must lie inside the region")
    arranged = _arrange(region, config, config.rtilde_f)
    charges, _, report = solve_harmonic_part(region, z0, config, Kernel.DSM, arranged)
    offset = float(charges.conjugate(z0))
    return ForwardMap(z0, charges, offset, region, config, arranged), report


def build_forward_multiply(
    region: Region, z0: complex, config: PointConfig, side_conditions: str = AMANO_COMPATIBLE
) -> tuple[ForwardMap, SolveReport]:
    """Map onto the annulus ``R_n < |w| < 1`` cut along arcs ``|w| = R_mu``.

    ``z0`` must lie in the last hole, whose boundary goes to ``|w| = R_n``.
    """
    if region.connectivity < 2:
        raise GeometryError("region is simply connected")
    if side_conditions != AMANO_COMPATIBLE:
        raise ValueError(f"unsupported side conditions {side_conditions!r}")
    z0 = complex(z0)
    if not region.holes[-1].encloses(z0):
        raise GeometryError("base point must lie inside the last hole")
    arranged = _arrange(region, config, config.rtilde_f)
    charges, moduli, report = solve_harmonic_part(region, z0, config, Kernel.DSM, arranged)
    if not all(0.0 < r < 1.0 for r in moduli):
        raise GeometryError(f"computed radii {moduli} are outside (0, 1)")
    if any(moduli[-1] >= r for r in moduli[:-1]):
        raise GeometryError(f"inner radius {moduli[-1]} is not the smallest of {moduli}")
    offset = float(charges.conjugate(z0))
    return ForwardMap(z0, charges, offset, region, config, arranged, moduli), report


def build_forward(region: Region, z0: complex, config: PointConfig) -> tuple[ForwardMap, SolveReport]:
    if region.connectivity == 1:
        return build_forward_simply(region, z0, config)
    return build_forward_multiply(region, z0, config)


def eval_forward(fmap: ForwardMap, z):
    return fmap(z)


def boundary_correspondence(fmap: ForwardMap) -> BoundaryCorrespondence:
    z = fmap.colloc
    return BoundaryCorrespondence(z, tuple(np.asarray(fmap(c)) for c in z), fmap.moduli)


def conjugate_periods(fmap: ForwardMap, samples: int = 1024) -> list[float]:
    """Conjugate period of ``g`` around each hole, integrated along the hole boundary."""
    return [conjugate_period(fmap.charges, hole, samples) for hole in fmap.region.holes]
