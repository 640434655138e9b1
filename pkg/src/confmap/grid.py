"""Preimage grids, their images under a map, and JSON/SVG serialization."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import TWO_PI, Region

log = logging.getLogger(__name__)

PREIMAGE = "preimage"
IMAGE = "image"


@dataclass(frozen=True, eq=False)
class GridImage:
    role: str
    polylines: tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.role not in (PREIMAGE, IMAGE):
            raise ValueError(f"unknown role {self.role!r}")
        lines = tuple(np.asarray(p, dtype=complex) for p in self.polylines)
        for p in lines:
            if p.size < 2 or not np.all(np.isfinite(p)):
                raise ValueError("polylines need at least two finite points")
        object.__setattr__(self, "polylines", lines)

    def to_dict(self) -> dict:
        return {
            "role": self.role,
            "polylines": [[[float(v.real), float(v.imag)] for v in p] for p in self.polylines],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GridImage":
        lines = [np.array([complex(x, y) for x, y in p]) for p in data["polylines"]]
        return cls(data["role"], tuple(lines))


def _runs(points: np.ndarray, mask: np.ndarray) -> list[np.ndarray]:
    out = []
    edges = np.flatnonzero(np.diff(np.concatenate([[0], mask.astype(int), [0]])))
    for lo, hi in zip(edges[::2], edges[1::2]):
        if hi - lo >= 2:
            out.append(points[lo:hi])
    return out


def cartesian_preimage(region: Region, lines: int = 16, points: int = 200, boundary: int = 512) -> GridImage:
    """Horizontal and vertical lines clipped to the region, plus its boundary curves."""
    x0, x1, y0, y1 = region.bbox()
    polylines = []
    xs = np.linspace(x0, x1, lines + 2)[1:-1]
    ys = np.linspace(y0, y1, lines + 2)[1:-1]
    for x in xs:
        seg = x + 1j * np.linspace(y0, y1, points)
        polylines += _runs(seg, region.classify(seg))
    for y in ys:
        seg = np.linspace(x0, x1, points) + 1j * y
        polylines += _runs(seg, region.classify(seg))
    for c in region.components:
        pts = c.sample(boundary)
        polylines.append(np.append(pts, pts[0]))
    if not polylines:
        log.warning("clipping produced an empty grid")
    return GridImage(PREIMAGE, tuple(polylines))


def polar_preimage(inner_radius: float | None = None, circles: int = 8, rays: int = 16, points: int = 200) -> GridImage:
    """Concentric circles and rays filling the disk or the annulus ``inner < |w| < 1``."""
    lo = inner_radius if inner_radius is not None else 0.0
    radii = np.linspace(lo, 1.0, circles + 1)
    if inner_radius is None:
        radii = radii[1:]
    t = np.linspace(0.0, 1.0, points)
    polylines = [r * np.exp(1j * TWO_PI * t) for r in radii]
    for k in range(rays):
        polylines.append(np.linspace(lo, 1.0, points) * np.exp(1j * TWO_PI * k / rays))
    return GridImage(PREIMAGE, tuple(polylines))


def image_of(grid: GridImage, mapping: Callable) -> GridImage:
    return GridImage(IMAGE, tuple(np.asarray(mapping(p), dtype=complex) for p in grid.polylines))


def write_json(grid: GridImage, path) -> None:
    with open(path, "w") as fh:
        json.dump(grid.to_dict(), fh, indent=None)


def read_json(path) -> GridImage:
    with open(path) as fh:
        return GridImage.from_dict(json.load(fh))


def to_svg(grid: GridImage, stroke: float = 0.002, margin: float = 0.02) -> str:
    """Plain polyline rendering scaled into a unit viewBox, y axis pointing up."""
    if grid.polylines:
        allpts = np.concatenate(grid.polylines)
        xmin, ymax = allpts.real.min(), allpts.imag.max()
        span = max(np.ptp(allpts.real), np.ptp(allpts.imag)) or 1.0
    else:
        xmin, ymax, span = 0.0, 0.0, 1.0
    scale = (1.0 - 2 * margin) / span
    rows = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1">',
        f'<g fill="none" stroke="black" stroke-width="{stroke}">',
    ]
    for p in grid.polylines:
        x = margin + (p.real - xmin) * scale
        y = margin + (ymax - p.imag) * scale
        coords = " ".join(f"{a:.6f},{b:.6f}" for a, b in zip(x, y))
        rows.append(f'<polyline points="{coords}"/>')
    rows += ["</g>", "</svg>", ""]
    return "\n".join(rows)


def write_svg(grid: GridImage, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_svg(grid))
