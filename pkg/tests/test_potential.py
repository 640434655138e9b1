import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from confmap import geometry
from confmap.arrangement import arrange_component, collocation_points
from confmap.forward import dirichlet_data_simply
from confmap.linsolve import SolverError, solve
from confmap.potential import (
    ChargeSystem,
    Kernel,
    SingularKernelError,
    UnsupportedKernelError,
    assemble,
    conjugate_period,
    dsm_entry,
    eval_conjugate,
    eval_potential,
    mfs_entry,
    solve_dirichlet,
)

UNIT = geometry.circle(0, 1)


def one_charge(q=1.0):
    return ChargeSystem(Kernel.DSM, np.array([2.0 + 0j]), np.array([q]), np.array([1.0 + 0j]))


def random_dsm(rng, n=12, radius=2.0):
    zeta = radius * np.exp(1j * rng.uniform(0, 2 * np.pi, n)) * rng.uniform(1.0, 1.5, n)
    moments = np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    return ChargeSystem(Kernel.DSM, zeta, rng.uniform(-1, 1, n), moments)


@pytest.mark.parametrize(
    "z, zeta, n, expected", [(0, 2, 1, -0.5), (1j, 2, 1, -0.4), (0, 2j, 1j, -0.5)]
)
def test_dsm_entry(z, zeta, n, expected):
    assert dsm_entry(z, zeta, n) == pytest.approx(expected)


@pytest.mark.parametrize("z, zeta, expected", [(0, 1, 0.0), (0, np.e, 1.0), (3j, -1j, np.log(4))])
def test_mfs_entry(z, zeta, expected):
    assert mfs_entry(z, zeta) == pytest.approx(expected, abs=1e-15)


def test_entry_at_singularity():
    with pytest.raises(SingularKernelError):
        dsm_entry(2, 2, 1)


def test_assemble_single():
    G = assemble(Kernel.DSM, np.array([0j]), np.array([2 + 0j]), np.array([1 + 0j]))
    np.testing.assert_allclose(G, [[-0.5]])


def test_assemble_is_circulant():
    z = collocation_points(UNIT, 4)
    G = assemble(Kernel.DSM, z, 2 * z, z)
    for k in range(4):
        np.testing.assert_allclose(np.roll(np.roll(G, 1, 0), 1, 1), G, atol=1e-15)
    assert np.isfinite(G).all()


def test_zero_rhs():
    arr = arrange_component(UNIT, 16, 0.2)
    sys, rep = solve_dirichlet(Kernel.DSM, arr.colloc, arr.singular, np.zeros(16), arr.moments)
    assert np.all(sys.coeffs == 0)
    assert rep.residual_inf == 0


def test_disk_data_residual():
    arr = arrange_component(UNIT, 16, 0.2)
    rhs = dirichlet_data_simply(0.5, arr.colloc)
    sys, rep = solve_dirichlet(Kernel.DSM, arr.colloc, arr.singular, rhs, arr.moments)
    assert rep.residual_inf <= 1e-10
    direct = np.abs(eval_potential(sys, arr.colloc) - rhs).max()
    assert abs(direct - rep.residual_inf) <= 1e-13


@pytest.mark.parametrize("kernel", [Kernel.DSM, Kernel.MFS])
def test_manufactured_solution(kernel):
    arr = arrange_component(UNIT, 16, 0.2)
    G = assemble(kernel, arr.colloc, arr.singular, arr.moments)
    q_true = np.random.default_rng(3).uniform(-1, 1, 16)
    sys, rep = solve_dirichlet(kernel, arr.colloc, arr.singular, G @ q_true, arr.moments)
    assert np.abs(sys.coeffs - q_true).max() <= max(1e-8, 10 * rep.cond_estimate * np.finfo(float).eps)


def test_eval_examples():
    assert eval_potential(one_charge(), 0) == pytest.approx(-0.5)
    assert eval_potential(one_charge(0.0), 0.3 + 0.1j) == 0
    assert eval_potential(one_charge(-3.5), 0.2j) == pytest.approx(-3.5 * eval_potential(one_charge(), 0.2j))
    assert eval_conjugate(one_charge(), 0) == pytest.approx(0.0, abs=1e-16)
    assert eval_conjugate(one_charge(), 1j) == pytest.approx(-0.2)


def test_mfs_has_no_conjugate():
    sys = ChargeSystem(Kernel.MFS, np.array([2 + 0j]), np.array([1.0]))
    with pytest.raises(UnsupportedKernelError):
        eval_conjugate(sys, 0)


def test_cauchy_riemann():
    rng = np.random.default_rng(11)
    sys = random_dsm(rng)
    z = 0.8 * np.sqrt(rng.uniform(0, 1, 16)) * np.exp(1j * rng.uniform(0, 2 * np.pi, 16))
    h = 1e-5
    dv_dx = (sys.conjugate(z + h) - sys.conjugate(z - h)) / (2 * h)
    du_dy = (sys.potential(z + 1j * h) - sys.potential(z - 1j * h)) / (2 * h)
    scale = np.maximum(np.abs(du_dy), 1e-3)
    assert np.max(np.abs(dv_dx + du_dy) / scale) < 1e-6


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_dsm_period_vanishes(seed):
    rng = np.random.default_rng(seed)
    n = 10
    zeta = 0.3 * np.sqrt(rng.uniform(0, 1, n)) * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    sys = ChargeSystem(Kernel.DSM, zeta, rng.uniform(-1, 1, n), np.exp(1j * rng.uniform(0, 2 * np.pi, n)))
    assert abs(conjugate_period(sys, geometry.circle(0, 0.6))) <= 1e-8


def test_mfs_periods():
    inside = ChargeSystem(Kernel.MFS, np.array([0.1 + 0j]), np.array([1.0]))
    outside = ChargeSystem(Kernel.MFS, np.array([3.0 + 0j]), np.array([1.0]))
    assert conjugate_period(inside, UNIT) == pytest.approx(2 * np.pi, abs=1e-12)
    assert abs(conjugate_period(outside, UNIT)) < 1e-12


def test_period_needs_clear_loop():
    with pytest.raises(SingularKernelError):
        conjugate_period(one_charge(), geometry.circle(0, 2.0))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_mean_value_property(seed):
    rng = np.random.default_rng(seed)
    sys = random_dsm(rng)
    centre = complex(*rng.uniform(-0.3, 0.3, 2))
    ring = geometry.circle(centre, 0.5).sample(4096)
    assert abs(sys.potential(centre) - sys.potential(ring).mean()) <= 1e-8


def test_harmonic():
    rng = np.random.default_rng(4)
    sys = random_dsm(rng)
    z = 0.8 * np.exp(1j * rng.uniform(0, 2 * np.pi, 16)) * rng.uniform(0, 1, 16)
    h = 1e-4
    u = sys.potential
    lap = (u(z + h) + u(z - h) + u(z + 1j * h) + u(z - 1j * h) - 4 * u(z)) / h ** 2
    scale = np.maximum(np.abs(u(z)), 1.0)
    assert np.all(np.abs(lap) <= 1e-4 * scale)


def test_linsolve_residual_and_fallback():
    A = np.array([[2.0, 1.0], [1.0, 3.0]])
    x, rep = solve(A, np.array([3.0, 4.0]))
    np.testing.assert_allclose(x, [1.0, 1.0])
    assert rep.method == "lu" and rep.cond_estimate > 1
    x, rep = solve(np.array([[1.0, 1.0], [1.0, 1.0]]), np.array([2.0, 2.0]))
    assert rep.method == "lstsq"
    np.testing.assert_allclose(x, [1.0, 1.0])
    with pytest.raises(SolverError):
        solve(np.array([[1.0, 1.0], [1.0, 1.0]]), np.array([1.0, 2.0]))
