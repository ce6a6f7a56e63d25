import math

import numpy as np
import pytest

from config import settings
from core.errors import ContractViolation, DomainError
from farfield.ludwig import copol_vectors, ludwig_copol, to_spherical
from farfield.patterns import (
    FarFieldResult,
    RadiatingSystem,
    cut_angles,
    directivity,
    field_at,
    hemisphere_power,
    pattern_cut,
    pattern_grid,
    sidelobes,
)
from farfield.radiation import Direction, SourceCurrents, direction_vectors, radiate
from geometry.paraboloid import Polarization
from nullsteer.design import boresight_peak, reference_system
from oracles.references import aperture_directivity, aperture_pattern, direct_field, uniform_disk_sources
from tests.conftest import SMALL_SPW

K = 2.0 * math.pi * settings.DEFAULT_FREQUENCY_HZ / settings.SPEED_OF_LIGHT
LAMBDA0 = settings.SPEED_OF_LIGHT / settings.DEFAULT_FREQUENCY_HZ


def test_single_source_at_origin():
    src = SourceCurrents(np.zeros((1, 3)), np.array([[1.0 + 0j, 0.0, 0.0]]), np.array([0.01]))
    E = radiate(src, Direction(0.0, 0.0), K)
    assert np.linalg.norm(E[0]) == pytest.approx(K * settings.ETA0 * 0.01 / (4.0 * math.pi), rel=1e-12)


def test_opposite_currents_cancel_broadside():
    d = 0.37
    src = SourceCurrents(np.array([[0.0, d, 0.0], [0.0, -d, 0.0]]),
                         np.array([[1.0 + 0j, 0, 0], [-1.0 + 0j, 0, 0]]), np.array([0.01, 0.01]))
    E = radiate(src, [Direction(0.0, 0.0), Direction(0.4, 0.0)], K)
    assert np.max(np.abs(E)) < 1e-15


def test_radiate_needs_sources():
    empty = SourceCurrents.concatenate([])
    with pytest.raises(ContractViolation):
        radiate(empty, Direction(0.0, 0.0), K)


def test_direction_rejects_theta_outside_the_sphere():
    with pytest.raises(DomainError):
        Direction(-0.1, 0.0)
    with pytest.raises(DomainError):
        Direction.from_degrees(181.0, 0.0)


def test_boresight_unit_vector_points_down():
    np.testing.assert_allclose(Direction(0.0, 1.0).unit_vector, [0.0, 0.0, -1.0], atol=1e-15)
    assert Direction.from_degrees(1.75, 0.0).theta == pytest.approx(math.radians(178.25))


def test_radiate_matches_the_scalar_loop(small_reference):
    _, system = small_reference
    dirs = [Direction.from_degrees(t, p) for t, p in ((0.0, 0.0), (3.0, 30.0), (8.0, 90.0), (40.0, 200.0))]
    E = radiate(system.sources, dirs, system.k)
    for d, e in zip(dirs, E):
        oracle = np.array(direct_field(system.sources.position, system.sources.J, system.sources.dS,
                                       d.unit_vector, system.k))
        assert np.linalg.norm(e - oracle) <= 1e-10 * np.linalg.norm(oracle)


def test_radiate_is_bit_identical_across_worker_counts(small_reference):
    _, system = small_reference
    theta = np.radians(np.linspace(0.0, 10.0, 41))
    u = direction_vectors(theta, np.zeros_like(theta))
    one = radiate(system.sources, u, system.k, workers=1)
    four = radiate(system.sources, u, system.k, workers=4)
    assert np.array_equal(one, four)


def test_ludwig_split_preserves_transverse_power():
    rng = np.random.default_rng(11)
    n = 300
    theta_z = rng.uniform(0.0, 0.5 * math.pi, n)
    phi = rng.uniform(0.0, 2.0 * math.pi, n)
    E = rng.normal(size=(n, 3)) + 1j * rng.normal(size=(n, 3))
    sph = to_spherical(E, theta_z, phi)
    for pol in Polarization:
        co, cr = ludwig_copol(sph, phi, pol)
        np.testing.assert_allclose(np.abs(co) ** 2 + np.abs(cr) ** 2,
                                   np.abs(sph[1]) ** 2 + np.abs(sph[2]) ** 2, rtol=1e-12)


@pytest.mark.parametrize("pol, co_axis, cr_axis", [(Polarization.Y, [0, 1, 0], [1, 0, 0]),
                                                   (Polarization.X, [1, 0, 0], [0, 1, 0])])
def test_copol_reference_at_boresight_is_the_feed_axis(pol, co_axis, cr_axis):
    phi = np.linspace(0.0, 2.0 * math.pi, 7)
    c_co, c_cr = copol_vectors(np.zeros_like(phi), phi, pol)
    np.testing.assert_allclose(c_co, np.tile(co_axis, (phi.size, 1)), atol=1e-15)
    np.testing.assert_allclose(c_cr, np.tile(cr_axis, (phi.size, 1)), atol=1e-15)


def test_copol_vectors_agree_with_the_spherical_split():
    rng = np.random.default_rng(5)
    theta_z = rng.uniform(0.0, 1.0, 50)
    phi = rng.uniform(0.0, 2.0 * math.pi, 50)
    E = rng.normal(size=(50, 3)) + 1j * rng.normal(size=(50, 3))
    c_co, c_cr = copol_vectors(theta_z, phi, Polarization.Y)
    co, cr = ludwig_copol(to_spherical(E, theta_z, phi), phi, Polarization.Y)
    np.testing.assert_allclose(np.sum(c_co * E, axis=-1), co, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(np.sum(c_cr * E, axis=-1), cr, rtol=1e-12, atol=1e-12)


def _disk_system(D_ap=1.0):
    pos, J, dS, P = uniform_disk_sources(D_ap, LAMBDA0)
    return RadiatingSystem(SourceCurrents(pos, J, dS), K, Polarization.Y, P, "disk")


def test_uniform_aperture_directivity():
    system = _disk_system()
    co, _ = field_at(system, Direction(0.0, 0.0))
    assert float(directivity(co, system.P_rad)) == pytest.approx(aperture_directivity(1.0, LAMBDA0), abs=0.1)


def test_uniform_aperture_pattern_shape():
    system = _disk_system()
    cut = pattern_cut(system, 0.0, 0.0, math.radians(10.0), math.radians(0.5))
    normalized = np.abs(cut.E_co) / np.abs(cut.E_co[0])
    np.testing.assert_allclose(normalized, np.abs(aperture_pattern(cut.theta_z_signed, 1.0, LAMBDA0)), atol=0.02)


def test_directivity_of_zero_field_is_minus_infinity():
    assert directivity(0.0, 1.0) == -np.inf
    with pytest.raises(DomainError):
        directivity(1.0, 0.0)


def test_reference_cut_is_symmetric_and_peaks_on_axis(small_reference):
    _, system = small_reference
    cut = pattern_cut(system, 0.0, math.radians(-3.0), math.radians(3.0), math.radians(0.25))
    np.testing.assert_allclose(cut.D_co, cut.D_co[::-1], atol=0.01)
    assert cut.summary["peak_theta_z_deg"] == pytest.approx(0.0, abs=1e-9)
    assert cut.directions[0].phi == pytest.approx(math.pi)
    assert np.max(cut.D_cr) < cut.summary["peak_D_co_dB"] - 20.0


def test_cut_probes_are_reported(small_reference):
    _, system = small_reference
    probe = Direction.from_degrees(8.0, 0.0)
    cut = pattern_cut(system, 0.0, 0.0, math.radians(1.0), math.radians(0.5), probes=[probe])
    co, _ = field_at(system, probe)
    assert cut.summary["D_co_at_8.00_0.0_dB"] == pytest.approx(float(directivity(co, system.P_rad)))


def test_cut_angles_validation():
    assert cut_angles(-1.0, 1.0, 0.5).tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]
    with pytest.raises(DomainError):
        cut_angles(0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        cut_angles(1.0, 0.0, 0.1)


def test_sidelobes_of_a_sinc_pattern():
    deg = np.arange(0.0, 5.0 + 1e-9, 0.01)
    t = np.radians(deg)
    E = np.sinc(deg).astype(complex)
    result = FarFieldResult(
        directions=[Direction(float(x), 0.0) for x in t],
        theta_z_signed=t, phi_label=np.zeros_like(t),
        E_co=E, E_cr=np.zeros_like(E), P_rad=1.0,
    )
    lobes = sidelobes(result)
    assert lobes[0]["theta_z_deg"] == pytest.approx(1.43, abs=0.02)
    assert lobes[1]["theta_z_deg"] == pytest.approx(2.46, abs=0.02)
    assert lobes[0]["D_co_dB"] - lobes[1]["D_co_dB"] == pytest.approx(4.57, abs=0.05)


def test_forward_hemisphere_holds_the_intercepted_power(small_reference):
    _, system = small_reference
    ratio = hemisphere_power(system, n_theta=180, n_phi=24) / system.P_rad
    assert 0.95 <= ratio <= 1.05


@pytest.mark.parametrize("axis", [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
def test_hemisphere_power_counts_only_the_transverse_field(axis):
    # short dipole at the origin: half of k²η|Il|²/(12π) goes into each hemisphere
    src = SourceCurrents(np.zeros((1, 3)), np.array([axis], dtype=complex), np.array([1.0]))
    system = RadiatingSystem(src, K, Polarization.Y, P_rad=1.0)
    expected = K * K * settings.ETA0 / (24.0 * math.pi)
    assert hemisphere_power(system, n_theta=180, n_phi=72) == pytest.approx(expected, rel=1e-3)


def test_systems_at_different_frequencies_do_not_add(small_reference):
    _, system = small_reference
    other = RadiatingSystem(system.sources, 2.0 * system.k, system.polarization, system.P_rad)
    with pytest.raises(ContractViolation):
        system + other


def test_pattern_grid_is_theta_major(small_reference):
    _, system = small_reference
    theta = np.radians([0.0, 2.0, 5.0])
    phi = np.radians([0.0, 60.0])
    grid = pattern_grid(system, theta, phi)
    assert len(grid.directions) == 6
    assert grid.directions[1].theta_z == pytest.approx(0.0)
    assert grid.directions[2].theta_z == pytest.approx(theta[1])
    for d, co in zip(grid.directions, grid.E_co):
        assert co == pytest.approx(field_at(system, d)[0], rel=1e-12, abs=1e-15)


def test_peak_directivity_is_converged_in_mesh_density(small_dish, small_feed):
    coarse = boresight_peak(reference_system(small_dish, small_feed, SMALL_SPW), 0.0, 0.5, 0.05)
    fine = boresight_peak(reference_system(small_dish, small_feed, 2 * SMALL_SPW), 0.0, 0.5, 0.05)
    assert abs(fine - coarse) < 0.02
