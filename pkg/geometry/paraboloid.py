"""
Prime-focus paraboloid: dish configuration, surface parameterization, local
tangent frames and the reflector quadrature mesh.

Global frame: the feed sits at the origin (the focus) and the vertex at
(0, 0, F); the dish opens towards -z, which is the boresight direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Tuple

import numpy as np
from numpy.typing import NDArray

from config import settings
from core.errors import DomainError

# |n × k| below this is treated as normal incidence
_FRAME_EPS = 1e-12


class Polarization(str, Enum):
    X = "x"
    Y = "y"


class Region(str, Enum):
    REFLECTOR = "reflector"
    REFLECTARRAY = "reflectarray"


@dataclass(frozen=True)
class DishConfig:
    """Full system geometry and operating frequency.

    Attributes:
        D: full diameter (m).
        D0: diameter of the solid reflector portion (m).
        F: focal length (m).
        f: frequency (Hz).
        q: raised-cosine feed exponent.
        polarization: feed polarization.
    """
    D: float
    D0: float
    F: float
    f: float = settings.DEFAULT_FREQUENCY_HZ
    q: float = settings.DEFAULT_FEED_Q
    polarization: Polarization = Polarization.Y

    def __post_init__(self):
        if not (self.D > 0 and self.D0 > 0 and self.F > 0 and self.f > 0):
            raise DomainError(f"dish dimensions and frequency must be positive: {self}")
        if self.D0 > self.D:
            raise DomainError(f"D0={self.D0} exceeds D={self.D}")
        if self.q <= 0:
            raise DomainError(f"feed exponent q must be positive, got {self.q}")
        object.__setattr__(self, "polarization", Polarization(self.polarization))

    @property
    def lambda0(self) -> float:
        return settings.SPEED_OF_LIGHT / self.f

    @property
    def k(self) -> float:
        return 2.0 * math.pi / self.lambda0

    @property
    def theta0(self) -> float:
        return subtended_angles(self.D, self.D0, self.F)[0]

    @property
    def theta1(self) -> float:
        return subtended_angles(self.D, self.D0, self.F)[1]

    def full_dish(self) -> "DishConfig":
        """Same dish with the rim given back to the solid reflector."""
        return replace(self, D0=self.D)


def subtended_angles(D: float, D0: float, F: float) -> Tuple[float, float]:
    """Rim angle θ0 of the full dish and boundary angle θ1 of the reflector portion."""
    if not (D > 0 and D0 > 0 and F > 0):
        raise DomainError(f"D, D0 and F must be positive (D={D}, D0={D0}, F={F})")
    if D0 > D:
        raise DomainError(f"D0={D0} exceeds D={D}")
    theta0 = 2.0 * math.atan(D / (4.0 * F))
    theta1 = 2.0 * math.atan(D0 / (4.0 * F))
    return theta0, theta1


def surface_point(theta_p, phi_p, F: float):
    """Focus-to-surface distance r_i = F·sec²(θ′/2) and the Cartesian point.

    Accepts scalars or arrays; position has a trailing axis of length 3.
    """
    theta_p = np.asarray(theta_p, dtype=float)
    phi_p = np.asarray(phi_p, dtype=float)
    if np.any(theta_p >= math.pi) or np.any(theta_p < 0):
        raise DomainError("theta_p must lie in [0, pi)")
    r_i = F / np.cos(0.5 * theta_p) ** 2
    sin_t = np.sin(theta_p)
    position = np.stack(
        [r_i * sin_t * np.cos(phi_p), r_i * sin_t * np.sin(phi_p), r_i * np.cos(theta_p)],
        axis=-1,
    )
    return r_i, position


def radial_unit(theta_p, phi_p) -> NDArray[np.floating]:
    theta_p = np.asarray(theta_p, dtype=float)
    phi_p = np.asarray(phi_p, dtype=float)
    sin_t = np.sin(theta_p)
    return np.stack([sin_t * np.cos(phi_p), sin_t * np.sin(phi_p), np.cos(theta_p)], axis=-1)


def surface_normal(theta_p, phi_p) -> NDArray[np.floating]:
    """Unit normal pointing to the focus: -(sin(θ′/2)cosφ′, sin(θ′/2)sinφ′, cos(θ′/2))."""
    half = 0.5 * np.asarray(theta_p, dtype=float)
    phi_p = np.asarray(phi_p, dtype=float)
    s = np.sin(half)
    return -np.stack([s * np.cos(phi_p), s * np.sin(phi_p), np.cos(half)], axis=-1)


def local_frame(theta_p, phi_p):
    """Local tangent frame (x_l, y_l, z_l) with the incident ray in the x_l–z_l plane.

    z_l is the unit normal towards the focus, y_l = n̂ × k̂ⁱ normalized and
    x_l = y_l × z_l. At normal incidence the plane of incidence is undefined
    and y_l = ŷ_g is used instead. At the vertex z_l = −ẑ_g, so that choice
    gives x_l = ŷ_g × (−ẑ_g) = −x̂_g and the triad stays right-handed.
    """
    z_l = surface_normal(theta_p, phi_p)
    k_i = radial_unit(theta_p, phi_p)
    cross = np.cross(z_l, k_i)
    norm = np.linalg.norm(cross, axis=-1, keepdims=True)
    degenerate = norm < _FRAME_EPS
    safe = np.where(degenerate, 1.0, norm)
    y_l = np.where(degenerate, np.array([0.0, 1.0, 0.0]), cross / safe)
    x_l = np.cross(y_l, z_l)
    x_l = x_l / np.linalg.norm(x_l, axis=-1, keepdims=True)
    return x_l, y_l, z_l


def meridian_arc_length(theta_p, F: float):
    """Arc length from the vertex along a meridian, s = F[sec u tan u + ln(sec u + tan u)], u = θ′/2."""
    u = 0.5 * np.asarray(theta_p, dtype=float)
    sec = 1.0 / np.cos(u)
    tan = np.tan(u)
    return F * (sec * tan + np.log(sec + tan))


def area_element(theta_p, F: float):
    """dS/(dθ′dφ′) = r_i² sinθ′ sec(θ′/2)."""
    theta_p = np.asarray(theta_p, dtype=float)
    r_i = F / np.cos(0.5 * theta_p) ** 2
    return r_i ** 2 * np.sin(theta_p) / np.cos(0.5 * theta_p)


@dataclass(frozen=True)
class SurfaceSample:
    """One quadrature point on the paraboloid."""
    theta_p: float
    phi_p: float
    r_i: float
    position: NDArray[np.floating]
    x_l: NDArray[np.floating]
    y_l: NDArray[np.floating]
    z_l: NDArray[np.floating]
    dS: float
    region: Region

    @property
    def n_hat(self) -> NDArray[np.floating]:
        return self.z_l


def _frozen(a) -> NDArray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SurfaceMesh:
    """Struct-of-arrays collection of surface samples; indexing yields a SurfaceSample."""
    theta_p: NDArray[np.floating]
    phi_p: NDArray[np.floating]
    r_i: NDArray[np.floating]
    position: NDArray[np.floating]
    x_l: NDArray[np.floating]
    y_l: NDArray[np.floating]
    z_l: NDArray[np.floating]
    dS: NDArray[np.floating]
    region: Region = Region.REFLECTOR
    F: float = field(default=0.0)

    def __post_init__(self):
        for name in ("theta_p", "phi_p", "r_i", "position", "x_l", "y_l", "z_l", "dS"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    def __len__(self) -> int:
        return self.theta_p.shape[0]

    def __getitem__(self, i: int) -> SurfaceSample:
        return SurfaceSample(
            theta_p=float(self.theta_p[i]), phi_p=float(self.phi_p[i]), r_i=float(self.r_i[i]),
            position=self.position[i], x_l=self.x_l[i], y_l=self.y_l[i], z_l=self.z_l[i],
            dS=float(self.dS[i]), region=self.region,
        )

    @property
    def n_hat(self) -> NDArray[np.floating]:
        return self.z_l

    @property
    def k_i(self) -> NDArray[np.floating]:
        return self.position / self.r_i[:, None]

    def slice(self, start: int, stop: int) -> "SurfaceMesh":
        return SurfaceMesh(
            self.theta_p[start:stop], self.phi_p[start:stop], self.r_i[start:stop],
            self.position[start:stop], self.x_l[start:stop], self.y_l[start:stop],
            self.z_l[start:stop], self.dS[start:stop], self.region, self.F,
        )

    @classmethod
    def empty(cls, region: Region = Region.REFLECTOR, F: float = 0.0) -> "SurfaceMesh":
        z1 = np.zeros(0)
        z3 = np.zeros((0, 3))
        return cls(z1, z1, z1, z3, z3, z3, z3, z1, region, F)

    @classmethod
    def concatenate(cls, meshes, region: Region) -> "SurfaceMesh":
        meshes = [m for m in meshes if len(m)]
        if not meshes:
            return cls.empty(region)
        cat = lambda name: np.concatenate([getattr(m, name) for m in meshes])
        return cls(
            cat("theta_p"), cat("phi_p"), cat("r_i"), cat("position"),
            cat("x_l"), cat("y_l"), cat("z_l"), cat("dS"), region, meshes[0].F,
        )


def build_mesh(theta_p, phi_p, dtheta, dphi, F: float, region: Region) -> SurfaceMesh:
    """Mesh from flat arrays of sample angles and their (θ′, φ′) cell widths."""
    theta_p = np.asarray(theta_p, dtype=float).ravel()
    phi_p = np.asarray(phi_p, dtype=float).ravel()
    r_i, position = surface_point(theta_p, phi_p, F)
    x_l, y_l, z_l = local_frame(theta_p, phi_p)
    dS = area_element(theta_p, F) * np.asarray(dtheta, dtype=float).ravel() * np.asarray(dphi, dtype=float).ravel()
    return SurfaceMesh(theta_p, phi_p, r_i, position, x_l, y_l, z_l, dS, region, F)


def mesh_reflector(cfg: DishConfig,
                   samples_per_wavelength: float = settings.SAMPLES_PER_WAVELENGTH,
                   theta_max: float = None) -> SurfaceMesh:
    """Midpoint grid in (θ′, φ′) over the solid reflector 0 ≤ θ′ ≤ θ1.

    The grid is sized so that both surface directions are sampled at least
    ``samples_per_wavelength`` times per wavelength at the outer edge, where
    the spacing is largest.
    """
    if samples_per_wavelength < 2:
        raise DomainError(f"samples_per_wavelength must be >= 2, got {samples_per_wavelength}")
    theta_max = cfg.theta1 if theta_max is None else float(theta_max)
    if theta_max <= 0.0:
        return SurfaceMesh.empty(Region.REFLECTOR, cfg.F)
    step = cfg.lambda0 / samples_per_wavelength
    r_edge = cfg.F / math.cos(0.5 * theta_max) ** 2
    meridian_rate = r_edge / math.cos(0.5 * theta_max)
    n_theta = max(1, math.ceil(theta_max * meridian_rate / step))
    n_phi = max(8, math.ceil(2.0 * math.pi * r_edge * math.sin(theta_max) / step))
    dtheta = theta_max / n_theta
    dphi = 2.0 * math.pi / n_phi
    theta = (np.arange(n_theta) + 0.5) * dtheta
    phi = (np.arange(n_phi) + 0.5) * dphi
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return build_mesh(tt, pp, dtheta, dphi, cfg.F, Region.REFLECTOR)
