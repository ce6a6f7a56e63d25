"""
Physical-optics radiation integral.

The returned field is r-normalized, Ẽ = r·E·e^{+jkr}, with the 1/(4π) of the
free-space Green's function kept:

    Ẽ(û) = (−jωμ0/4π) Σ J_s(r′) e^{jk û·r′} dS

Sources are summed in fixed-size chunks whose partial sums are combined with
Kahan compensation in chunk order. Directions are processed in fixed-size
blocks, so the result is bit-identical for any worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from config import settings
from core.errors import ContractViolation, DomainError
from core.numerics import kahan_sum
from core.parallel import ordered_map


@dataclass(frozen=True)
class Direction:
    """Observation direction as boresight offset θ_z from -ẑ_g and azimuth φ (radians)."""
    theta_z: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta_z <= math.pi:
            raise DomainError(f"theta_z must lie in [0, pi], got {self.theta_z}")

    @classmethod
    def from_degrees(cls, theta_z_deg: float, phi_deg: float) -> "Direction":
        return cls(math.radians(theta_z_deg), math.radians(phi_deg))

    @property
    def unit_vector(self) -> NDArray[np.floating]:
        return direction_vectors(self.theta_z, self.phi)

    @property
    def theta(self) -> float:
        """Global spherical polar angle."""
        return math.pi - self.theta_z


def direction_vectors(theta_z, phi) -> NDArray[np.floating]:
    """û = −cosθ_z ẑ + sinθ_z (cosφ x̂ + sinφ ŷ)."""
    theta_z = np.asarray(theta_z, dtype=float)
    phi = np.asarray(phi, dtype=float)
    s = np.sin(theta_z)
    return np.stack([s * np.cos(phi), s * np.sin(phi), -np.cos(theta_z)], axis=-1)


@dataclass(frozen=True)
class SourceCurrents:
    """Surface currents at quadrature points: positions (N, 3) m, J (N, 3) A/m, dS (N,) m²."""
    position: NDArray[np.floating]
    J: NDArray[np.complexfloating]
    dS: NDArray[np.floating]

    def __len__(self) -> int:
        return self.position.shape[0]

    @classmethod
    def from_mesh(cls, mesh, J) -> "SourceCurrents":
        return cls(np.asarray(mesh.position, dtype=float), np.asarray(J, dtype=complex),
                   np.asarray(mesh.dS, dtype=float))

    @classmethod
    def concatenate(cls, parts: Iterable["SourceCurrents"]) -> "SourceCurrents":
        parts = [p for p in parts if len(p)]
        if not parts:
            return cls(np.zeros((0, 3)), np.zeros((0, 3), dtype=complex), np.zeros(0))
        return cls(np.concatenate([p.position for p in parts]),
                   np.concatenate([p.J for p in parts]),
                   np.concatenate([p.dS for p in parts]))


def _as_unit_vectors(directions) -> NDArray[np.floating]:
    if isinstance(directions, Direction):
        return directions.unit_vector[None, :]
    if isinstance(directions, np.ndarray):
        return np.atleast_2d(np.asarray(directions, dtype=float))
    return np.stack([d.unit_vector for d in directions])


def _radiate_block(u_block, position, JdS, k, chunk):
    partials = []
    for start in range(0, position.shape[0], chunk):
        p = position[start:start + chunk]
        arg = (u_block[:, 0, None] * p[None, :, 0]
               + u_block[:, 1, None] * p[None, :, 1]
               + u_block[:, 2, None] * p[None, :, 2])
        phase = np.exp(1j * k * arg)
        j = JdS[start:start + chunk]
        partials.append(np.stack([(phase * j[:, c]).sum(axis=1) for c in range(3)], axis=-1))
    return kahan_sum(np.stack(partials))


def radiate(sources: SourceCurrents, directions: Union[Direction, Sequence[Direction], NDArray],
            k: float, workers: int = None, chunk: int = settings.SOURCE_CHUNK,
            block: int = settings.DIRECTION_BLOCK) -> NDArray[np.complexfloating]:
    """r-normalized far field (V) at each direction, shape (M, 3) Cartesian."""
    if len(sources) == 0:
        raise ContractViolation("radiate needs at least one source current")
    u = _as_unit_vectors(directions)
    JdS = sources.J * sources.dS[:, None]
    blocks = [u[i:i + block] for i in range(0, u.shape[0], block)]
    fields = ordered_map(lambda ub: _radiate_block(ub, sources.position, JdS, k, chunk), blocks, workers)
    prefactor = -1j * k * settings.ETA0 / (4.0 * math.pi)
    return prefactor * np.concatenate(fields, axis=0)
