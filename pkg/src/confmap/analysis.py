"""Error measurement, periodic Hilbert transform and convergence sweeps.

Sup-norm errors of holomorphic maps are taken on the boundary only (maximum
principle), at ``M`` parameter values ``(m + 1/2) / M`` that never coincide
with collocation nodes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .arrangement import PointConfig
from .backward import BackwardMap, build_backward
from .forward import ForwardMap, boundary_correspondence, build_forward, solve_harmonic_part
from .geometry import TWO_PI, BoundaryCurve, Region, circle
from .potential import Kernel
from .reference import ExactMapCase

log = logging.getLogger(__name__)

PLATEAU = 1e-11
RATIO_FLOOR = 1e-13


def sup_error_on_boundary(approx: Callable, exact: Callable, curve: BoundaryCurve, M: int) -> float:
    if M < 256:
        raise ValueError("use at least 256 boundary samples")
    z = curve.sample(M, offset=0.5)
    err = np.abs(np.asarray(approx(z)) - np.asarray(exact(z)))
    if not np.all(np.isfinite(err)):
        raise FloatingPointError("non-finite value while sampling the error")
    return float(err.max())


def sigma(n) -> np.ndarray:
    return np.sign(np.asarray(n))


def hilbert_transform(coeffs) -> np.ndarray:
    """Fourier multiplier ``b_n = -i sign(n) a_n`` on a window ``n = -M..M``."""
    a = np.asarray(coeffs, dtype=complex)
    if a.ndim != 1 or a.size % 2 != 1:
        raise ValueError("expected coefficients for n = -M..M (odd length)")
    M = a.size // 2
    return -1j * sigma(np.arange(-M, M + 1)) * a


def conjugate_samples(samples) -> np.ndarray:
    """Hilbert transform of real periodic samples on a uniform grid."""
    x = np.asarray(samples, dtype=float)
    n = np.fft.fftfreq(x.size, 1.0 / x.size)
    mult = -1j * np.sign(n)
    if x.size % 2 == 0:
        mult[x.size // 2] = 0.0        # Nyquist mode has no conjugate on the grid
    return np.real(np.fft.ifft(mult * np.fft.fft(x)))


def weights(n, s: float) -> np.ndarray:
    """``max(2 pi |n|, 1) ** (2 s)``."""
    return np.maximum(TWO_PI * np.abs(n), 1.0) ** (2 * s)


def discrete_hs_norm(samples, s: float = 1.0) -> float:
    x = np.asarray(samples, dtype=float)
    M = x.size
    if M < 64 or M & (M - 1):
        raise ValueError("sample count must be a power of two >= 64")
    c = np.fft.fft(x) / M
    n = np.fft.fftfreq(M, 1.0 / M)
    return float(np.sqrt(np.sum(np.abs(c) ** 2 * weights(n, s))))


def hs_ratio(g_err, h_err, s: float = 1.0) -> Optional[float]:
    """``||h_err||_s / ||g_err||_s``, or None when the g-error is at rounding level."""
    den = discrete_hs_norm(g_err, s)
    if den <= RATIO_FLOOR:
        return None
    return discrete_hs_norm(h_err, s) / den


def exact_harmonic_traces(case: ExactMapCase, curve: BoundaryCurve, tau) -> tuple[np.ndarray, np.ndarray]:
    """Boundary values of ``g = log|f/(z - z0)|`` and its conjugate ``h`` with ``h(z0) = 0``.

    ``h`` is the argument of ``f(z)/(z - z0)`` continued along the segment from
    ``z0`` to ``curve(tau[0])`` and then along the boundary.  The segment must
    stay inside the region (true for the star-shaped test cases).
    """
    tau = np.asarray(tau, dtype=float)
    z = curve(tau)
    z0 = case.z0

    def q(p):
        return case.forward(p) / (p - z0)

    t = np.linspace(1e-6, 1.0, 512)
    path = z0 + t * (z[0] - z0)
    phase = np.unwrap(np.angle(np.concatenate([q(path), q(z)])))
    return np.log(np.abs(q(z))), phase[path.size:]


def conjugate_error_ratio(
    map_builder: Callable[[int], ForwardMap],
    case: ExactMapCase,
    N_list: Sequence[int],
    s: float = 1.0,
    M: int = 1024,
) -> list[Optional[float]]:
    """Per N, ``||h - h^(N)||_s / ||g - g^(N)||_s`` on ``M`` boundary samples."""
    if case.region.connectivity != 1:
        raise ValueError("the conjugate-error check needs a simply connected case")
    curve = case.region.outer
    tau = np.arange(M) / M
    G, H = exact_harmonic_traces(case, curve, tau)
    z = curve(tau)
    out = []
    for N in N_list:
        fmap = map_builder(N)
        out.append(hs_ratio(G - fmap.g(z), H - fmap.h(z), s))
    return out


def harmonic_part_error(case: ExactMapCase, N: int, rtilde: float, kernel: Kernel, M_factor: int = 16) -> float:
    """Sup error of the collocation approximation of ``g`` alone (DSM or MFS)."""
    config = PointConfig(N, rtilde, rtilde)
    charges, _, _ = solve_harmonic_part(case.region, case.z0, config, kernel)
    err = 0.0
    for curve in case.region.components:
        z = curve.sample(max(256, M_factor * N), offset=0.5)
        exact = np.log(np.abs(case.forward(z) / (z - case.z0)))
        err = max(err, float(np.abs(charges.potential(z) - exact).max()))
    return err


@dataclass
class ConvergenceRecord:
    N: int
    err_forward: Optional[float] = None
    err_backward: Optional[float] = None
    err_modulus: Optional[float] = None
    residual_f: Optional[float] = None
    residual_b: Optional[float] = None
    cond_f: Optional[float] = None
    cond_b: Optional[float] = None
    error: Optional[str] = None
    maps: Optional[tuple] = field(default=None, repr=False)


def canonical_circles(fmap: ForwardMap, case: Optional[ExactMapCase]) -> list[BoundaryCurve]:
    radii = case.radii if case is not None else (1.0, *fmap.moduli[-1:])
    return [circle(0.0, r) for r in radii]


def measure(
    region: Region,
    z0: complex,
    config: PointConfig,
    case: Optional[ExactMapCase] = None,
    M_factor: int = 16,
    backward: bool = True,
) -> ConvergenceRecord:
    """Build forward (and backward) maps at one N and record errors and residuals."""
    N = config.N
    M = max(256, M_factor * N)
    rec = ConvergenceRecord(N)
    fmap, frep = build_forward(region, z0, config)
    rec.residual_f, rec.cond_f = frep.residual_inf, frep.cond_estimate
    bmap: Optional[BackwardMap] = None
    if backward and region.connectivity <= 2:
        bmap, brep = build_backward(boundary_correspondence(fmap), config)
        rec.residual_b, rec.cond_b = brep.residual_inf, brep.cond_estimate
    if case is not None:
        rec.err_forward = max(
            sup_error_on_boundary(fmap, case.forward, c, M) for c in region.components
        )
        if bmap is not None:
            rec.err_backward = max(
                sup_error_on_boundary(bmap, case.backward, c, M) for c in canonical_circles(fmap, case)
            )
        if case.modulus is not None:
            rec.err_modulus = float(abs(fmap.moduli[0] - case.modulus))
    rec.maps = (fmap, bmap)
    return rec


def convergence_sweep(
    region: Region,
    z0: complex,
    N_list: Sequence[int],
    rtilde_f: float,
    rtilde_b: float,
    case: Optional[ExactMapCase] = None,
    M_factor: int = 16,
    keep_maps: bool = False,
) -> list[ConvergenceRecord]:
    """One record per N; a failed build is recorded and the sweep moves on."""
    records = []
    for N in N_list:
        try:
            rec = measure(region, z0, PointConfig(N, rtilde_f, rtilde_b), case, M_factor)
        except Exception as exc:  # noqa: BLE001 - recorded per N
            log.warning("N=%d failed: %s", N, exc)
            rec = ConvergenceRecord(N, error=f"{type(exc).__name__}: {exc}")
        if not keep_maps:
            rec.maps = None
        records.append(rec)
    return records


def pre_plateau(N_list: Sequence[int], errors: Sequence[float], floor: float = PLATEAU) -> tuple[np.ndarray, np.ndarray]:
    """Leading run of the sweep before the error stalls.

    The run stops before the first increase, and after the first value below
    ``floor``.
    """
    N = list(N_list)
    e = list(errors)
    end = 1
    while end < len(e):
        if e[end - 1] < floor or not e[end] < e[end - 1]:
            break
        end += 1
    return np.asarray(N[:end], dtype=float), np.asarray(e[:end], dtype=float)


def decays_monotonically(errors: Sequence[float], floor: float = PLATEAU) -> bool:
    """No increase anywhere while the error is still above ``floor``."""
    e = list(errors)
    return all(b < a for a, b in zip(e, e[1:]) if a >= floor)


def decay_slope(N_list: Sequence[int], errors: Sequence[float], floor: float = PLATEAU) -> float:
    """Least-squares slope of ``log10(err)`` against N over the pre-plateau run."""
    N, e = pre_plateau(N_list, errors, floor)
    if N.size < 2:
        return float("nan")
    return float(np.polyfit(N, np.log10(e), 1)[0])
