import math

import numpy as np
import pytest

from config import settings
from core.errors import DomainError
from feed.feed_model import (
    FeedConfig,
    VectorModel,
    edge_taper_db,
    feed_power,
    incident_field,
    incident_on_mesh,
    polarization_vector,
)
from geometry.paraboloid import DishConfig, Polarization, mesh_reflector
from oracles.references import feed_power_quad

FULL = DishConfig(D=18.0, D0=18.0, F=7.2)


def _feed(polarization="y", model=VectorModel.NORMALIZED, q=1.14):
    return FeedConfig(E0=1.0 + 0j, q=q, polarization=polarization, k=FULL.k, vector_model=model)


@pytest.mark.parametrize("polarization, expected", [("y", [0.0, 1.0, 0.0]), ("x", [1.0, 0.0, 0.0])])
def test_on_axis_polarization_is_the_feed_axis(polarization, expected):
    phi = np.linspace(0.0, 2.0 * math.pi, 9)
    vec = polarization_vector(np.zeros_like(phi), phi, _feed(polarization))
    np.testing.assert_allclose(vec, np.tile(expected, (phi.size, 1)), atol=1e-15)


def test_vertex_field_magnitude_is_e0_over_f():
    mesh = mesh_reflector(FULL, 4, theta_max=1e-6)
    E = incident_field(_feed(), mesh[0])
    assert np.linalg.norm(E) == pytest.approx(1.0 / 7.2, rel=1e-9)


def test_rim_field_in_the_h_plane():
    mesh = mesh_reflector(FULL, 4)
    feed = _feed()
    rim = int(np.argmax(mesh.theta_p))
    sample = mesh[rim]
    E = incident_field(feed, sample)
    expected = math.cos(sample.theta_p) ** 1.14 / sample.r_i
    assert np.linalg.norm(E) == pytest.approx(expected, rel=1e-12)

    theta0 = FULL.theta0
    r0 = 7.2 / math.cos(0.5 * theta0) ** 2
    assert math.cos(theta0) ** 1.14 / r0 == pytest.approx(0.03902, rel=2e-3)


def test_normalized_vector_has_unit_length_and_verbatim_does_not():
    rng = np.random.default_rng(3)
    theta = rng.uniform(0.0, math.radians(64.0), 500)
    phi = rng.uniform(0.0, 2.0 * math.pi, 500)
    for pol in ("x", "y"):
        vec = polarization_vector(theta, phi, _feed(pol))
        np.testing.assert_allclose(np.linalg.norm(vec, axis=-1), 1.0, atol=1e-12)
    verbatim = polarization_vector(theta, phi, _feed(model=VectorModel.VERBATIM))
    assert np.max(np.linalg.norm(verbatim, axis=-1)) > 1.05


def test_incident_field_is_transverse():
    mesh = mesh_reflector(DishConfig(D=3.0, D0=3.0, F=1.2), 4)
    for model in VectorModel:
        feed = FeedConfig.for_dish(DishConfig(D=3.0, D0=3.0, F=1.2), vector_model=model)
        E = incident_on_mesh(feed, mesh)
        along = np.abs(np.sum(E * mesh.k_i, axis=-1))
        assert np.all(along <= 1e-12 * np.linalg.norm(E, axis=-1))


def test_feed_power_of_the_18m_dish():
    assert feed_power(_feed(), FULL.theta0) == pytest.approx(2.3725e-3, rel=1e-3)


def test_feed_power_limits():
    assert feed_power(_feed(), 0.0) == 0.0
    expected = 2.0 * math.pi / (2.0 * settings.ETA0 * 2.0)
    assert feed_power(_feed(q=0.5), 0.5 * math.pi) == pytest.approx(expected, rel=1e-12)


def test_feed_power_against_cone_quadrature():
    theta0 = FULL.theta0
    assert feed_power(_feed(), theta0) == pytest.approx(feed_power_quad(1.0, 1.14, theta0), rel=1e-6)
    verbatim = feed_power_quad(1.0, 1.14, theta0, verbatim=True)
    assert verbatim / feed_power(_feed(), theta0) > 1.05


def test_feed_power_rejects_rim_past_ninety_degrees():
    with pytest.raises(DomainError):
        feed_power(_feed(), math.radians(95.0))


def test_edge_taper_of_the_18m_dish():
    assert edge_taper_db(FULL) == pytest.approx(-11.03, abs=0.05)


def test_feed_rejects_non_positive_exponent():
    with pytest.raises(DomainError):
        FeedConfig(E0=1.0, q=0.0, polarization=Polarization.Y, k=1.0)
