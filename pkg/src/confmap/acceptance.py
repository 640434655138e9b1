"""Acceptance checks, shared by ``confmap verify`` and the test suite.

Each criterion returns a list of ``Check`` lines; tolerances are fixed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import analysis, geometry, reference
from .arrangement import PointConfig, arrangement_deviation, amano_singular, conformal_singular, amano_radius_for
from .forward import build_forward, conjugate_periods, solve_harmonic_part
from .geometry import TWO_PI
from .potential import ChargeSystem, Kernel, assemble, conjugate_period
from .linsolve import solve

SQRT14 = np.sqrt(14.0)
FRAME = (2 * SQRT14, 7.0, 2.0, 1.0)
DISK_N = (8, 16, 24, 32, 40, 48)
LONG_N = (8, 16, 24, 32, 40, 48, 56, 64)
SLOPE_MAX = -0.05
ROUND_TRIP_SEED = 20190611


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.criterion}. {self.name}: {self.detail}"


def _sweep_values(records, attr):
    return [getattr(r, attr) for r in records]


@lru_cache(maxsize=None)
def disk_sweep():
    case = reference.mobius_case(0.5)
    return case, tuple(analysis.convergence_sweep(case.region, case.z0, DISK_N, 0.2, 0.1, case, keep_maps=True))


@lru_cache(maxsize=None)
def cassini_sweep():
    case = reference.cassini_case(1.1)
    return case, tuple(analysis.convergence_sweep(case.region, case.z0, LONG_N, 0.06, 0.04, case, keep_maps=True))


@lru_cache(maxsize=None)
def frame_sweep():
    case = reference.frame_case(*FRAME)
    return case, tuple(analysis.convergence_sweep(case.region, case.z0, LONG_N, 0.06, 0.03, case, keep_maps=True))


def _decay_checks(crit, label, N, errs, final_N=None, final_tol=None):
    out = [
        Check(crit, f"{label} monotone decay", analysis.decays_monotonically(errs),
              "errors " + ", ".join(f"{e:.2e}" for e in errs)),
    ]
    slope = analysis.decay_slope(N, errs)
    out.append(Check(crit, f"{label} fitted slope", slope <= SLOPE_MAX,
                     f"{slope:.4f} per unit N (need <= {SLOPE_MAX})"))
    if final_N is not None:
        e = errs[list(N).index(final_N)]
        out.append(Check(crit, f"{label} error at N={final_N}", e <= final_tol,
                         f"{e:.3e} (need <= {final_tol:.0e})"))
    return out


def criterion_1():
    _, recs = disk_sweep()
    errs = _sweep_values(recs, "err_forward")
    return _decay_checks(1, "disk forward", DISK_N, errs, DISK_N[-1], 1e-8)


def round_trip_error(N: int = 32, points: int = 200) -> float:
    _, recs = disk_sweep()
    fmap, bmap = recs[DISK_N.index(N)].maps
    rng = np.random.default_rng(ROUND_TRIP_SEED)
    z = np.sqrt(rng.uniform(0, 1, points)) * np.exp(1j * rng.uniform(0, TWO_PI, points))
    return float(np.abs(bmap(fmap(z)) - z).max())


def criterion_2():
    _, recs = disk_sweep()
    out = _decay_checks(2, "disk backward", DISK_N, _sweep_values(recs, "err_backward"))
    e = round_trip_error()
    out.append(Check(2, "disk round trip at N=32", e <= 1e-6,
                     f"max |f_*(f(z)) - z| = {e:.3e} over 200 interior points (need <= 1e-06)"))
    return out


def criterion_3():
    _, recs = cassini_sweep()
    return (_decay_checks(3, "Cassini forward", LONG_N, _sweep_values(recs, "err_forward"), 64, 1e-6)
            + _decay_checks(3, "Cassini backward", LONG_N, _sweep_values(recs, "err_backward"), 64, 1e-6))


def criterion_4():
    case, recs = frame_sweep()
    errs = _sweep_values(recs, "err_modulus")
    R = recs[-1].maps[0].moduli[0]
    decreasing = all(b < a for a, b in zip(errs, errs[1:]))
    return [
        Check(4, "frame modulus at N=64", errs[-1] <= 1e-6,
              f"R = {R:.12f}, rho = {case.modulus:.12f}, |R - rho| = {errs[-1]:.3e} (need <= 1e-06)"),
        Check(4, "frame modulus error decreasing", decreasing, ", ".join(f"{e:.2e}" for e in errs)),
    ]


def triply_connected_region():
    return geometry.multiply_connected(
        geometry.circle(0, 1.0), [geometry.circle(0.55, 0.15), geometry.circle(-0.1, 0.25)]
    )


def multiply_connected_builds():
    """Every doubly/triply connected forward map exercised by the acceptance suite."""
    _, recs = frame_sweep()
    maps = [r.maps[0] for r in recs]
    ann = reference.annulus_case(0.4)
    for N in (16, 32):
        maps.append(build_forward(ann.region, 0.0, PointConfig(N, 0.06, 0.03))[0])
    tri = triply_connected_region()
    for N in (16, 32, 48):
        maps.append(build_forward(tri, -0.1, PointConfig(N, 0.1, 0.1))[0])
    return maps


def criterion_5():
    worst = max(abs(p) for fmap in multiply_connected_builds() for p in conjugate_periods(fmap))
    out = [Check(5, "DSM conjugate periods vanish", worst <= 1e-8, f"max |period| = {worst:.3e} (need <= 1e-08)")]

    # MFS baseline: period equals 2 pi sum_k Q_{nu k}
    case = reference.frame_case(*FRAME)
    hole = case.region.holes[0]
    dev = 0.0
    for N in (16, 32, 48):
        charges, _, _ = solve_harmonic_part(case.region, 0.0, PointConfig(N, 0.06, 0.03), Kernel.MFS)
        hole_q = charges.coeffs[N:]
        dev = max(dev, abs(conjugate_period(charges, hole) - TWO_PI * hole_q.sum()))
    rng = np.random.default_rng(5)
    for _ in range(10):
        inner = 0.5 * np.exp(1j * rng.uniform(0, TWO_PI, 8)) * rng.uniform(0.1, 1.0, 8)
        outer = 3.0 * np.exp(1j * rng.uniform(0, TWO_PI, 8))
        q = rng.uniform(-1, 1, 16)
        sys = ChargeSystem(Kernel.MFS, np.concatenate([inner, outer]), q)
        dev = max(dev, abs(conjugate_period(sys, geometry.circle(0, 1.5)) - TWO_PI * q[:8].sum()))
    out.append(Check(5, "MFS period equals 2 pi sum Q", dev <= 1e-8, f"max deviation {dev:.3e} (need <= 1e-08)"))
    return out


def criterion_6():
    case, recs = disk_sweep()
    maps = {r.N: r.maps[0] for r in recs}
    ratios = analysis.conjugate_error_ratio(lambda N: maps[N], case, DISK_N, s=1.0)
    kept = [r for r in ratios if r is not None]
    ok = bool(kept) and max(kept) <= 10
    return [Check(6, "conjugate-error H^1 ratio bounded", ok,
                  "ratios " + ", ".join("n/a" if r is None else f"{r:.3f}" for r in ratios) + " (need <= 10)")]


def criterion_7():
    circle_dev = 0.0
    for N in (8, 16, 32):
        k = np.arange(1, N + 1)
        z = np.exp(1j * TWO_PI * k / N)
        for R in (1.05, 1.1, 1.2):
            diff = conformal_singular(lambda w: w, R, N) - amano_singular(z, amano_radius_for(R, N))
            circle_dev = max(circle_dev, float(np.abs(diff).max()))

    def psi(w):
        return w + 0.1 * w ** 2

    e1 = arrangement_deviation(psi, 0.1, 256)
    e_half = arrangement_deviation(psi, 0.05, 256)
    e_2N = arrangement_deviation(psi, 0.1, 512)
    return [
        Check(7, "circle: conformal == Amano arrangement", circle_dev <= 1e-13, f"max deviation {circle_dev:.2e}"),
        Check(7, "halving delta", e_half / e1 <= 0.6, f"E(0.05)/E(0.1) = {e_half / e1:.4f} at N=256 (need <= 0.6)"),
        Check(7, "doubling N", e_2N / e1 <= 1.05, f"E(N=512)/E(N=256) = {e_2N / e1:.4f} (need <= 1.05)"),
    ]


def criterion_8():
    worst = 0.0
    for sweep in (disk_sweep, cassini_sweep, frame_sweep):
        _, recs = sweep()
        for r in recs:
            worst = max(worst, r.residual_f, r.residual_b)
    out = [Check(8, "collocation residuals", worst <= 1e-9, f"max residual {worst:.3e} (need <= 1e-09)")]

    # manufactured solution on the disk arrangement
    fmap = disk_sweep()[1][DISK_N.index(16)].maps[0]
    arr = fmap.arranged[0]
    G = assemble(Kernel.DSM, arr.colloc, arr.singular, arr.moments)
    q_true = np.random.default_rng(8).uniform(-1, 1, G.shape[0])
    q, rep = solve(G, G @ q_true)
    tol = max(1e-8, 10 * rep.cond_estimate * np.finfo(float).eps)
    dq = float(np.abs(q - q_true).max())
    out.append(Check(8, "manufactured-solution recovery", dq <= tol, f"max |dQ| = {dq:.2e} (tol {tol:.1e})"))

    rng = np.random.default_rng(88)
    M = 1024
    x = rng.standard_normal(M)
    x[M // 2] = 0.0
    xh = np.fft.fft(x)
    xh[M // 2] = 0.0                  # drop the Nyquist mode, which has no conjugate
    x = np.real(np.fft.ifft(xh))
    hh = analysis.conjugate_samples(analysis.conjugate_samples(x))
    inv = float(np.abs(hh + x - x.mean()).max())
    coeffs = rng.standard_normal(65) + 1j * rng.standard_normal(65)
    inv_c = float(np.abs(analysis.hilbert_transform(analysis.hilbert_transform(coeffs))
                         + coeffs - np.where(np.arange(-32, 33) == 0, coeffs, 0)).max())
    parseval = abs(analysis.discrete_hs_norm(x, 0.0) - float(np.sqrt(np.mean(x ** 2))))
    out.append(Check(8, "Hilbert involution", max(inv, inv_c) <= 1e-12, f"max deviation {max(inv, inv_c):.2e}"))
    out.append(Check(8, "Parseval identity", parseval <= 1e-12, f"|H^0 norm - RMS| = {parseval:.2e}"))
    return out


def criterion_9():
    case = reference.mobius_case(0.5)
    out = []
    for kernel in (Kernel.DSM, Kernel.MFS):
        errs = [analysis.harmonic_part_error(case, N, 0.2, kernel) for N in DISK_N]
        slope = analysis.decay_slope(DISK_N, errs)
        out.append(Check(9, f"{kernel.name} g-error decays", slope < 0,
                         f"slope {slope:.4f}; errors " + ", ".join(f"{e:.2e}" for e in errs)))
    return out


CRITERIA: dict[int, Callable[[], list[Check]]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_all(echo: Callable[[str], None] = print) -> bool:
    ok = True
    for crit in CRITERIA.values():
        for check in crit():
            echo(check.line())
            ok &= check.passed
    return ok
