import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from confmap import geometry
from confmap.arrangement import (
    EXTERIOR,
    INTERIOR,
    ArrangementError,
    PointConfig,
    amano_moments,
    amano_radius_for,
    amano_singular,
    arrange_component,
    arrangement_deviation,
    collocation_points,
    conformal_singular,
)

UNIT = geometry.circle(0, 1)


def test_quarter_points():
    z = collocation_points(UNIT, 4)
    np.testing.assert_allclose(z, [1j, -1, -1j, 1], atol=1e-15)


def test_first_point_n8():
    assert collocation_points(UNIT, 8)[0] == pytest.approx(np.exp(1j * np.pi / 4))


def test_cassini_last_point():
    z = collocation_points(geometry.cassini_oval(1.1), 4)
    assert z[3] == pytest.approx(1.486607, abs=1e-6)


def test_amano_singular_square():
    zeta = amano_singular(collocation_points(UNIT, 4), 1.0)
    assert zeta[0] == pytest.approx(2j)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 80), st.floats(0.01, 3.0))
def test_amano_concentric(N, r):
    z = collocation_points(UNIT, N)
    zeta = amano_singular(z, r)
    np.testing.assert_allclose(zeta, z * (1 + r * np.sin(2 * np.pi / N)), atol=1e-13)
    np.testing.assert_allclose(amano_moments(zeta), zeta / np.abs(zeta), atol=1e-13)


def test_zero_offset():
    z = collocation_points(geometry.cassini_oval(1.3), 12)
    np.testing.assert_allclose(amano_singular(z, 0.0), z)


def test_moments_on_radius_two():
    zeta = 2 * collocation_points(UNIT, 4)
    assert amano_moments(zeta)[0] == pytest.approx(1j)
    assert amano_moments(collocation_points(UNIT, 4))[0] == pytest.approx(1j)


def test_coincident_neighbours_raise():
    with pytest.raises(ArrangementError):
        amano_moments(np.array([1, 2, 1, 3j], dtype=complex))


def test_exterior_radius():
    arr = arrange_component(UNIT, 30, 0.2, EXTERIOR)
    np.testing.assert_allclose(np.abs(arr.singular), 1 + 6 * np.sin(np.pi / 15), atol=1e-13)
    assert np.abs(arr.singular)[0] == pytest.approx(2.247469, abs=1e-5)  # sin(pi/15) rounded to 6 digits


def test_interior_radius():
    arr = arrange_component(UNIT, 8, 0.1, INTERIOR)
    np.testing.assert_allclose(np.abs(arr.singular), 1 - 0.8 * np.sin(np.pi / 4), atol=1e-13)
    assert np.abs(arr.singular)[0] == pytest.approx(0.434315, abs=1e-6)


CURVES = [UNIT, geometry.cassini_oval(1.1), geometry.cassini_level_curve(2.0, 1.0)]


@pytest.mark.parametrize("curve", CURVES, ids=lambda c: c.name)
@pytest.mark.parametrize("side", [EXTERIOR, INTERIOR])
def test_component_invariants(curve, side):
    arr = arrange_component(curve, 40, 0.05, side)
    np.testing.assert_allclose(np.abs(arr.moments), 1.0, atol=1e-12)
    inside = np.array([curve.encloses(p) for p in arr.singular])
    assert inside.all() if side == INTERIOR else not inside.any()


def test_point_config_validation():
    with pytest.raises(ValueError):
        PointConfig(3)
    with pytest.raises(ValueError):
        PointConfig(16, rtilde_f=0.0)


def test_conformal_identity():
    assert conformal_singular(lambda w: w, 1.5, 4)[0] == pytest.approx(1.5j)


@pytest.mark.parametrize("N", [8, 16, 32])
@pytest.mark.parametrize("R", [1.05, 1.1, 1.2])
def test_circle_exactness(N, R):
    z = collocation_points(UNIT, N)
    diff = conformal_singular(lambda w: w, R, N) - amano_singular(z, amano_radius_for(R, N))
    assert np.abs(diff).max() <= 1e-13


def test_perturbed_map_deviation_bound():
    dev = arrangement_deviation(lambda w: w + 0.1 * w ** 2, 0.1, 64)
    assert dev <= 10 * (0.1 ** 2 + 0.1 / 64)
