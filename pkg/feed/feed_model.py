"""
Raised-cosine feed at the focus.

Two polarization-vector models are available:

- ``normalized`` (default): the Ludwig-2 vector θ̂cosθ′sinφ′ + φ̂cosφ′ divided
  by √(1 − sin²θ′sin²φ′), which has unit length, so |E|·r_i = E0·cos^q θ′ and
  the intercepted power equals the closed form exactly.
- ``verbatim``: θ̂sinφ′ + φ̂cosφ′ over the same divisor, as printed. Its
  magnitude grows off the principal planes.

x-polarized feeds use the same construction with φ′ rotated by 90°.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from config import settings
from core.errors import DomainError
from geometry.paraboloid import DishConfig, Polarization, SurfaceMesh


class VectorModel(str, Enum):
    NORMALIZED = "normalized"
    VERBATIM = "verbatim"


@dataclass(frozen=True)
class FeedConfig:
    E0: complex
    q: float
    polarization: Polarization
    k: float
    vector_model: VectorModel = VectorModel.NORMALIZED

    def __post_init__(self):
        if self.q <= 0:
            raise DomainError(f"feed exponent q must be positive, got {self.q}")
        if self.k <= 0:
            raise DomainError(f"wavenumber must be positive, got {self.k}")
        object.__setattr__(self, "polarization", Polarization(self.polarization))
        object.__setattr__(self, "vector_model", VectorModel(self.vector_model))

    @classmethod
    def for_dish(cls, cfg: DishConfig, E0: complex = 1.0 + 0.0j,
                 vector_model: VectorModel = VectorModel.NORMALIZED) -> "FeedConfig":
        return cls(E0=complex(E0), q=cfg.q, polarization=cfg.polarization, k=cfg.k,
                   vector_model=vector_model)


def spherical_units(theta, phi):
    """(r̂, θ̂, φ̂) as arrays with a trailing Cartesian axis."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    r_hat = np.stack([st * cp, st * sp, ct], axis=-1)
    t_hat = np.stack([ct * cp, ct * sp, -st], axis=-1)
    p_hat = np.stack([-sp, cp, np.zeros_like(phi + theta)], axis=-1)
    return r_hat, t_hat, p_hat


def polarization_vector(theta_p, phi_p, feed: FeedConfig):
    """Unit-vector factor of the feed field in global Cartesian components."""
    theta_p = np.asarray(theta_p, dtype=float)
    phi_p = np.asarray(phi_p, dtype=float)
    _, t_hat, p_hat = spherical_units(theta_p, phi_p)
    if feed.polarization is Polarization.Y:
        a, b = np.sin(phi_p), np.cos(phi_p)
    else:
        a, b = np.cos(phi_p), -np.sin(phi_p)
    divisor_sq = 1.0 - np.sin(theta_p) ** 2 * a ** 2
    if np.any(divisor_sq <= 0.0):
        raise DomainError("feed divisor vanishes; theta_p must stay below 90 degrees")
    theta_weight = a * np.cos(theta_p) if feed.vector_model is VectorModel.NORMALIZED else a
    vec = theta_weight[..., None] * t_hat + b[..., None] * p_hat
    return vec / np.sqrt(divisor_sq)[..., None]


def incident_field(feed: FeedConfig, sample) -> np.ndarray:
    """Incident electric field (V/m, complex Cartesian) at one sample or a whole mesh.

    E0·e^{−jkr_i}/r_i · cos^q θ′ · (polarization vector).
    """
    theta_p = np.asarray(sample.theta_p, dtype=float)
    r_i = np.asarray(sample.r_i, dtype=float)
    amplitude = feed.E0 * np.exp(-1j * feed.k * r_i) / r_i * np.cos(theta_p) ** feed.q
    return amplitude[..., None] * polarization_vector(theta_p, sample.phi_p, feed)


def feed_power(feed: FeedConfig, theta0: float) -> float:
    """Feed power intercepted by a dish of rim angle θ0 (W).

    P = |E0|²·2π/(2η0(2q+1))·(1 − cos^{2q+1} θ0).
    """
    if not 0.0 <= theta0 <= 0.5 * math.pi:
        raise DomainError(f"theta0 must lie in [0, pi/2], got {theta0}")
    q = feed.q
    return (abs(feed.E0) ** 2 * 2.0 * math.pi / (2.0 * settings.ETA0 * (2.0 * q + 1.0))
            * (1.0 - math.cos(theta0) ** (2.0 * q + 1.0)))


def edge_taper_db(cfg: DishConfig) -> float:
    """Rim-to-vertex field ratio in the φ′ = 0 plane, including the 1/r spreading."""
    theta0 = cfg.theta0
    r_rim = cfg.F / math.cos(0.5 * theta0) ** 2
    ratio = math.cos(theta0) ** cfg.q * cfg.F / r_rim
    return 20.0 * math.log10(ratio)


def incident_on_mesh(feed: FeedConfig, mesh: SurfaceMesh) -> np.ndarray:
    if len(mesh) == 0:
        return np.zeros((0, 3), dtype=complex)
    return incident_field(feed, mesh)
