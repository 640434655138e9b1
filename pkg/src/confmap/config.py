"""JSON run configurations.

Example::

    {"region": {"kind": "disk"}, "z0": [0.5, 0], "N_list": [8, 16, 32],
     "rtilde_f": 0.2, "rtilde_b": 0.1}

Region kinds and their fields:

    disk           center [re, im] (default [0, 0]), radius (default 1)
    cassini_oval   a
    cassini_frame  a1, b1, a2, b2
    annulus        rho
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import geometry, reference
from .geometry import Region
from .reference import ExactMapCase, NoExactMapError

OUTPUTS = ("csv", "json", "svg")

REGION_FIELDS = {
    "disk": {"required": (), "optional": ("center", "radius")},
    "cassini_oval": {"required": ("a",), "optional": ()},
    "cassini_frame": {"required": ("a1", "b1", "a2", "b2"), "optional": ()},
    "annulus": {"required": ("rho",), "optional": ()},
}

TOP_FIELDS = {
    "required": ("region", "z0", "N_list", "rtilde_f", "rtilde_b"),
    "optional": ("s", "M_factor", "outputs"),
}


class ConfigError(ValueError):
    """Invalid configuration; the message starts with the offending field path."""


@dataclass(frozen=True)
class RunConfig:
    region: dict
    z0: complex
    N_list: tuple[int, ...]
    rtilde_f: float
    rtilde_b: float
    s: float = 1.0
    M_factor: int = 16
    outputs: tuple[str, ...] = field(default=("csv",))

    def build_region(self) -> Region:
        return region_from_dict(self.region)

    def exact_case(self) -> Optional[ExactMapCase]:
        return case_from_dict(self.region, self.z0)


def _number(value, path: str, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(f"{path}: must be positive")
    return float(value)


def _complex(value, path: str) -> complex:
    if not (isinstance(value, list) and len(value) == 2):
        raise ConfigError(f"{path}: expected [re, im]")
    return complex(_number(value[0], f"{path}[0]"), _number(value[1], f"{path}[1]"))


def _check_keys(obj: dict, required, optional, path: str) -> None:
    for key in obj:
        if key not in required and key not in optional:
            raise ConfigError(f"{path}.{key}: unknown key" if path else f"{key}: unknown key")
    for key in required:
        if key not in obj:
            raise ConfigError(f"{path}.{key}: missing" if path else f"{key}: missing")


def validate_region(params) -> dict:
    if not isinstance(params, dict):
        raise ConfigError("region: expected an object")
    kind = params.get("kind")
    if kind not in REGION_FIELDS:
        raise ConfigError(f"region.kind: expected one of {sorted(REGION_FIELDS)}, got {kind!r}")
    allowed = REGION_FIELDS[kind]
    _check_keys(params, ("kind",) + allowed["required"], allowed["optional"], "region")
    out = {"kind": kind}
    for key in allowed["required"] + allowed["optional"]:
        if key not in params:
            continue
        if key == "center":
            out[key] = _complex(params[key], f"region.{key}")
        else:
            out[key] = _number(params[key], f"region.{key}", positive=True)
    return out


def region_from_dict(params: dict) -> Region:
    kind = params["kind"]
    try:
        if kind == "disk":
            return geometry.disk(params.get("center", 0j), params.get("radius", 1.0))
        if kind == "cassini_oval":
            return geometry.cassini_oval_region(params["a"])
        if kind == "cassini_frame":
            return geometry.cassini_frame(params["a1"], params["b1"], params["a2"], params["b2"])
        return geometry.annulus(params["rho"])
    except geometry.GeometryError as exc:
        raise ConfigError(f"region: {exc}") from exc


def case_from_dict(params: dict, z0: complex) -> Optional[ExactMapCase]:
    """Closed-form oracle for the region, or None when there is none for this base point."""
    kind = params["kind"]
    try:
        if kind == "disk":
            return reference.disk_case(z0, params.get("center", 0j), params.get("radius", 1.0))
        if z0 != 0:
            return None
        if kind == "cassini_oval":
            return reference.cassini_case(params["a"])
        if kind == "cassini_frame":
            return reference.frame_case(params["a1"], params["b1"], params["a2"], params["b2"])
        return reference.annulus_case(params["rho"])
    except NoExactMapError:
        return None


def config_from_dict(data) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object")
    _check_keys(data, TOP_FIELDS["required"], TOP_FIELDS["optional"], "")
    region = validate_region(data["region"])
    z0 = _complex(data["z0"], "z0")

    N_list = data["N_list"]
    if not isinstance(N_list, list) or not N_list:
        raise ConfigError("N_list: expected a nonempty list")
    for i, N in enumerate(N_list):
        if isinstance(N, bool) or not isinstance(N, int) or N < 4:
            raise ConfigError(f"N_list[{i}]: expected an integer >= 4")
    if any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ConfigError("N_list: must be strictly ascending")

    outputs = data.get("outputs", ["csv"])
    if isinstance(outputs, list):
        outputs = ["json" if o == "grid_json" else o for o in outputs]
    if not isinstance(outputs, list) or any(o not in OUTPUTS for o in outputs):
        raise ConfigError(f"outputs: expected a list drawn from {list(OUTPUTS)}")
    M_factor = data.get("M_factor", 16)
    if isinstance(M_factor, bool) or not isinstance(M_factor, int) or M_factor < 1:
        raise ConfigError("M_factor: expected a positive integer")

    return RunConfig(
        region=region,
        z0=z0,
        N_list=tuple(N_list),
        rtilde_f=_number(data["rtilde_f"], "rtilde_f", positive=True),
        rtilde_b=_number(data["rtilde_b"], "rtilde_b", positive=True),
        s=_number(data.get("s", 1.0), "s"),
        M_factor=M_factor,
        outputs=tuple(outputs),
    )


def parse_config(path) -> RunConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"config: file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON ({exc})") from exc
    return config_from_dict(data)
