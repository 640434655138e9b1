"""Write sweep tables and grid figures for a run configuration."""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Iterable, Optional

from . import grid as gridmod
from .analysis import ConvergenceRecord, conjugate_error_ratio, convergence_sweep
from .arrangement import PointConfig
from .backward import BackwardMap
from .config import RunConfig
from .forward import ForwardMap, build_forward

log = logging.getLogger(__name__)

CSV_HEADER = ["N", "err_f", "err_b", "err_rho", "res_f", "res_b", "cond_f", "cond_b"]


def fmt(value: Optional[float]) -> str:
    return "" if value is None else format(float(value), ".17g")


def record_row(rec: ConvergenceRecord) -> list[str]:
    return [
        str(rec.N),
        fmt(rec.err_forward),
        fmt(rec.err_backward),
        fmt(rec.err_modulus),
        fmt(rec.residual_f),
        fmt(rec.residual_b),
        fmt(rec.cond_f),
        fmt(rec.cond_b),
    ]


def write_csv(records: Iterable[ConvergenceRecord], path: Path) -> Path:
    records = list(records)
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(CSV_HEADER)
        for rec in records:
            out.writerow(record_row(rec))
    failures = [r for r in records if r.error]
    if failures:
        with open(path.with_suffix(".log"), "w") as fh:
            for rec in failures:
                fh.write(f"N={rec.N}: {rec.error}\n")
    return path


def run_sweep(
    config: RunConfig, out_dir, keep_maps: bool = False, write: bool = True
) -> tuple[Path, list[ConvergenceRecord]]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    region = config.build_region()
    case = config.exact_case()
    records = convergence_sweep(
        region, config.z0, config.N_list, config.rtilde_f, config.rtilde_b, case, config.M_factor, keep_maps
    )
    path = out_dir / "sweep.csv"
    if write:
        write_csv(records, path)
        if case is not None and case.name == "disk_mobius":
            write_ratios(config, case, out_dir / "conjugate_ratio.csv")
    return path, records


def write_ratios(config: RunConfig, case, path: Path) -> None:
    """Discrete H^s ratio of conjugate error to harmonic-part error, per N."""
    region = case.region

    def builder(N):
        return build_forward(region, config.z0, PointConfig(N, config.rtilde_f, config.rtilde_b))[0]

    ratios = conjugate_error_ratio(builder, case, config.N_list, config.s)
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["N", "ratio"])
        for N, r in zip(config.N_list, ratios):
            out.writerow([N, fmt(r)])


def emit_grid(fmap: ForwardMap, bmap: Optional[BackwardMap], out_dir, formats=("json",)) -> dict:
    """Forward and backward preimage/image grids; returns ``{name: GridImage}``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    grids = {}
    pre = gridmod.cartesian_preimage(fmap.region)
    grids["forward_preimage"] = pre
    grids["forward_image"] = gridmod.image_of(pre, fmap)
    if bmap is not None:
        bpre = gridmod.polar_preimage(bmap.inner_radius)
        grids["backward_preimage"] = bpre
        grids["backward_image"] = gridmod.image_of(bpre, bmap)
    for name, g in grids.items():
        if "json" in formats:
            gridmod.write_json(g, out_dir / f"{name}.json")
        if "svg" in formats:
            gridmod.write_svg(g, out_dir / f"{name}.svg")
    return grids


def run(config: RunConfig, out_dir, emit: Optional[Iterable[str]] = None) -> list[ConvergenceRecord]:
    emit = tuple(emit) if emit is not None else config.outputs
    out_dir = Path(out_dir)
    _, records = run_sweep(config, out_dir, keep_maps=True, write="csv" in emit)
    built = [r for r in records if r.maps is not None]
    if built and ("json" in emit or "svg" in emit):
        fmap, bmap = built[-1].maps
        emit_grid(fmap, bmap, out_dir, emit)
    for r in records:
        r.maps = None
    return records
