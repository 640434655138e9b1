import numpy as np
import pytest

from confmap import geometry
from confmap.arrangement import PointConfig
from confmap.backward import BackwardMap, build_backward, cdsm_assemble, eval_backward
from confmap.forward import boundary_correspondence, build_forward
from confmap.linsolve import solve


def test_cdsm_entries():
    assert cdsm_assemble(np.array([0j]), np.array([2 + 0j]))[0, 0] == pytest.approx(-0.5)
    assert cdsm_assemble(np.array([1j]), np.array([-1j]))[0, 0] == pytest.approx(-0.5j)
    q, _ = solve(cdsm_assemble(np.array([0j]), np.array([1 + 0j])), np.array([1 + 0j]))
    assert q[0] == pytest.approx(-1)


def test_eval_examples():
    zero = BackwardMap(np.array([2 + 0j]), np.array([0j]), (1,))
    assert eval_backward(zero, 0.3j) == 0
    one = BackwardMap(np.array([2 + 0j]), np.array([1 + 0j]), (1,))
    assert eval_backward(one, 0) == pytest.approx(-0.5)


def test_identity_backward():
    config = PointConfig(16)
    fmap, _ = build_forward(geometry.disk(), 0.0, config)
    corr = boundary_correspondence(fmap)
    bmap, rep = build_backward(corr, config)
    assert rep.residual_inf <= 1e-10
    assert np.abs(bmap(corr.w[0]) - corr.w[0]).max() <= 1e-10


def test_disk_backward_error(disk_maps):
    case, _, bmap, _, brep = disk_maps
    w = geometry.circle().sample(16 * 32, offset=0.5)
    # oracle run gives 1.04e-5 at N = 32
    assert np.abs(bmap(w) - case.backward(w)).max() <= 2e-5
    assert brep.residual_inf <= 1e-9


def test_pole_sides(disk_maps, frame_maps):
    bmap = disk_maps[2]
    assert np.all(np.abs(bmap.poles) > 1)
    bmap, fmap = frame_maps[2], frame_maps[1]
    outer, inner = np.split(bmap.poles, [bmap.groups[0]])
    assert np.all(np.abs(outer) > 1)
    assert np.all(np.abs(inner) < fmap.moduli[0])


def test_frame_backward_residual(frame_maps):
    case, _, _, _, brep = frame_maps
    x0, x1, y0, y1 = case.region.bbox()
    assert brep.residual_inf <= 1e-9 * max(x1 - x0, y1 - y0)


def test_holomorphic(disk_maps):
    bmap = disk_maps[2]
    rng = np.random.default_rng(7)
    w = 0.9 * np.sqrt(rng.uniform(0, 1, 16)) * np.exp(1j * rng.uniform(0, 2 * np.pi, 16))
    h = 1e-5
    dx = (bmap(w + h) - bmap(w - h)) / (2 * h)
    dy = (bmap(w + 1j * h) - bmap(w - 1j * h)) / (2 * h)
    assert np.max(np.abs(dy - 1j * dx) / np.abs(dx)) < 1e-6
    assert np.max(np.abs(dx - bmap.derivative(w)) / np.abs(dx)) < 1e-6


def test_round_trip_small(disk_maps):
    _, fmap, bmap, *_ = disk_maps
    rng = np.random.default_rng(1)
    z = np.sqrt(rng.uniform(0, 1, 200)) * np.exp(1j * rng.uniform(0, 2 * np.pi, 200))
    # the 1e-6 acceptance bound is tracked in test_acceptance; here the oracle-run value
    assert np.abs(bmap(fmap(z)) - z).max() <= 1e-5


def test_triply_connected_backward_unsupported():
    region = geometry.multiply_connected(
        geometry.circle(0, 1.0), [geometry.circle(0.55, 0.15), geometry.circle(-0.1, 0.25)]
    )
    fmap, _ = build_forward(region, -0.1, PointConfig(16, 0.1, 0.1))
    with pytest.raises(ValueError):
        build_backward(boundary_correspondence(fmap), PointConfig(16, 0.1, 0.1))
