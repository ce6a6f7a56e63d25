"""Ludwig third-definition co/cross-polar decomposition in the lower hemisphere."""

import numpy as np

from feed.feed_model import spherical_units
from geometry.paraboloid import Polarization


def to_spherical(E_cart, theta_z, phi):
    """(E_r, E_θ, E_φ) of a Cartesian field at û(θ_z, φ), global θ = π − θ_z."""
    E_cart = np.asarray(E_cart, dtype=complex)
    r_hat, t_hat, p_hat = spherical_units(np.pi - np.asarray(theta_z, dtype=float), phi)
    dot = lambda v: np.sum(E_cart * v, axis=-1)
    return dot(r_hat), dot(t_hat), dot(p_hat)


def ludwig_copol(E_sph, phi, pol: Polarization):
    """(E_co, E_cr) from spherical components, elementwise over arrays of φ.

    The θ̂ terms carry a sign flip because θ̂ reverses direction below the
    xy-plane. E_r is dropped.
    """
    _, E_t, E_p = E_sph
    c, s = np.cos(phi), np.sin(phi)
    if Polarization(pol) is Polarization.X:
        return -c * E_t - s * E_p, -s * E_t + c * E_p
    return -s * E_t + c * E_p, -c * E_t - s * E_p


def copol_vectors(theta_z, phi, pol: Polarization):
    """Cartesian vectors (c_co, c_cr) with E_co = c_co·E and E_cr = c_cr·E at û(θ_z, φ)."""
    _, t_hat, p_hat = spherical_units(np.pi - np.asarray(theta_z, dtype=float), phi)
    return ludwig_copol((None, t_hat, p_hat), np.asarray(phi, dtype=float)[..., None], pol)
