import numpy as np
import pytest

from confmap import reference
from confmap.arrangement import PointConfig
from confmap.backward import build_backward
from confmap.forward import boundary_correspondence, build_forward

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def disk_maps():
    """Forward and backward maps of the disk with z0 = 0.5 at N = 32."""
    case = reference.mobius_case(0.5)
    config = PointConfig(32, 0.2, 0.1)
    fmap, frep = build_forward(case.region, case.z0, config)
    bmap, brep = build_backward(boundary_correspondence(fmap), config)
    return case, fmap, bmap, frep, brep


@pytest.fixture(scope="session")
def frame_maps():
    case = reference.frame_case(2 * np.sqrt(14.0), 7.0, 2.0, 1.0)
    config = PointConfig(48, 0.06, 0.03)
    fmap, frep = build_forward(case.region, 0.0, config)
    bmap, brep = build_backward(boundary_correspondence(fmap), config)
    return case, fmap, bmap, frep, brep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
