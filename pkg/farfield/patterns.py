"""
Radiating systems, directivity and pattern cuts.

A RadiatingSystem is the frozen set of PO currents of one dish state
(reflector, reflectarray or both) together with the feed power they are
normalized to. Pattern evaluation never mutates it, so one system can be
sampled from many threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from config import settings
from core.errors import ContractViolation, DomainError
from core.numerics import power_db
from farfield.ludwig import ludwig_copol, to_spherical
from farfield.radiation import Direction, SourceCurrents, direction_vectors, radiate
from feed.feed_model import FeedConfig, incident_on_mesh
from geometry.paraboloid import Polarization, SurfaceMesh
from scattering.currents import surface_current
from scattering.dyads import PEC_DYAD

PATTERN_COLUMNS = [
    "theta_z_deg", "phi_deg", "D_co_dB", "D_cr_dB",
    "E_co_re", "E_co_im", "E_cr_re", "E_cr_im",
]


@dataclass(frozen=True)
class RadiatingSystem:
    sources: SourceCurrents
    k: float
    polarization: Polarization
    P_rad: float
    label: str = ""

    def __add__(self, other: "RadiatingSystem") -> "RadiatingSystem":
        if not math.isclose(self.k, other.k) or self.polarization is not other.polarization:
            raise ContractViolation("cannot superpose systems at different frequencies or polarizations")
        return RadiatingSystem(
            SourceCurrents.concatenate([self.sources, other.sources]),
            self.k, self.polarization, self.P_rad,
            "+".join(x for x in (self.label, other.label) if x),
        )


def reflector_sources(mesh: SurfaceMesh, feed: FeedConfig) -> SourceCurrents:
    """PO currents of the solid reflector region (R = −I everywhere)."""
    if len(mesh) == 0:
        return SourceCurrents.concatenate([])
    E_i = incident_on_mesh(feed, mesh)
    return SourceCurrents.from_mesh(mesh, surface_current(mesh, PEC_DYAD, E_i))


def annulus_sources(mesh: SurfaceMesh, owner: np.ndarray, cell_dyads: np.ndarray,
                    feed: FeedConfig) -> SourceCurrents:
    """PO currents of the reflectarray, each subsample carrying its cell's 2×2 dyad."""
    if len(mesh) == 0:
        return SourceCurrents.concatenate([])
    cell_dyads = np.asarray(cell_dyads, dtype=complex)
    if owner.size and owner.max() >= cell_dyads.shape[0]:
        raise ContractViolation(
            f"{cell_dyads.shape[0]} cell dyads supplied for {int(owner.max()) + 1} cells")
    E_i = incident_on_mesh(feed, mesh)
    return SourceCurrents.from_mesh(mesh, surface_current(mesh, cell_dyads[owner], E_i))


def build_system(feed: FeedConfig, P_rad: float, reflector: Optional[SurfaceMesh] = None,
                 annulus: Optional[SurfaceMesh] = None, owner: Optional[np.ndarray] = None,
                 cell_dyads: Optional[np.ndarray] = None, label: str = "") -> RadiatingSystem:
    parts = []
    if reflector is not None:
        parts.append(reflector_sources(reflector, feed))
    if annulus is not None and len(annulus):
        if owner is None or cell_dyads is None:
            raise ContractViolation("annulus currents need the cell owner index and per-cell dyads")
        parts.append(annulus_sources(annulus, owner, cell_dyads, feed))
    return RadiatingSystem(SourceCurrents.concatenate(parts), feed.k, feed.polarization, P_rad, label)


def directivity(E_co, P_rad: float) -> np.ndarray:
    """10·log10(4π·|Ẽ|²/(2η0·P_rad)); a zero field maps to -inf."""
    if P_rad <= 0.0:
        raise DomainError(f"P_rad must be positive, got {P_rad}")
    U = np.abs(np.asarray(E_co)) ** 2 / (2.0 * settings.ETA0)
    return power_db(4.0 * math.pi * U / P_rad)


def copol_fields(system: RadiatingSystem, theta_z, phi, workers: int = None):
    """(E_co, E_cr) at arrays of (θ_z, φ), in radians."""
    theta_z = np.atleast_1d(np.asarray(theta_z, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    E = radiate(system.sources, direction_vectors(theta_z, phi), system.k, workers)
    return ludwig_copol(to_spherical(E, theta_z, phi), phi, system.polarization)


def field_at(system: RadiatingSystem, direction: Direction, workers: int = None):
    E_co, E_cr = copol_fields(system, [direction.theta_z], [direction.phi], workers)
    return complex(E_co[0]), complex(E_cr[0])


@dataclass
class FarFieldResult:
    """Sampled co/cross-polar pattern of one radiating system.

    ``theta_z_signed`` keeps the cut abscissa (negative values are the
    φ + π half-plane); for grids it equals the direction's θ_z.
    """
    directions: List[Direction]
    theta_z_signed: np.ndarray
    phi_label: np.ndarray
    E_co: np.ndarray
    E_cr: np.ndarray
    P_rad: float
    D_co: np.ndarray = field(init=False)
    D_cr: np.ndarray = field(init=False)
    summary: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        self.D_co = directivity(self.E_co, self.P_rad)
        self.D_cr = directivity(self.E_cr, self.P_rad)
        i = int(np.argmax(self.D_co))
        self.summary.setdefault("peak_D_co_dB", float(self.D_co[i]))
        self.summary.setdefault("peak_theta_z_deg", math.degrees(float(self.theta_z_signed[i])))
        self.summary.setdefault("peak_phi_deg", math.degrees(float(self.phi_label[i])))

    def __len__(self) -> int:
        return len(self.directions)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "theta_z_deg": np.degrees(self.theta_z_signed),
            "phi_deg": np.degrees(self.phi_label),
            "D_co_dB": self.D_co,
            "D_cr_dB": self.D_cr,
            "E_co_re": self.E_co.real,
            "E_co_im": self.E_co.imag,
            "E_cr_re": self.E_cr.real,
            "E_cr_im": self.E_cr.imag,
        }, columns=PATTERN_COLUMNS)


def cut_angles(theta_start: float, theta_stop: float, step: float) -> np.ndarray:
    """Monotone θ_z abscissa from start to stop inclusive (radians)."""
    if step <= 0.0:
        raise DomainError(f"cut step must be positive, got {step}")
    if theta_stop < theta_start:
        raise DomainError(f"cut stop {theta_stop} lies below start {theta_start}")
    n = int(math.floor((theta_stop - theta_start) / step + 1e-9)) + 1
    return theta_start + step * np.arange(n)


def pattern_cut(system: RadiatingSystem, phi_cut: float, theta_start: float, theta_stop: float,
                step: float, probes: Sequence[Direction] = (), workers: int = None) -> FarFieldResult:
    """Co/cross-polar cut in the φ_cut plane over signed θ_z (radians).

    A negative θ_z is the direction (|θ_z|, φ_cut + π).
    """
    signed = cut_angles(theta_start, theta_stop, step)
    if np.any(np.abs(signed) > math.pi):
        raise DomainError("cut angles must stay within ±180 degrees")
    theta_z = np.abs(signed)
    phi = np.where(signed < 0.0, phi_cut + math.pi, phi_cut)
    E_co, E_cr = copol_fields(system, theta_z, phi, workers)
    result = FarFieldResult(
        directions=[Direction(float(t), float(p)) for t, p in zip(theta_z, phi)],
        theta_z_signed=signed,
        phi_label=np.full(signed.shape, float(phi_cut)),
        E_co=E_co,
        E_cr=E_cr,
        P_rad=system.P_rad,
    )
    for probe in probes:
        co, _ = field_at(system, probe, workers)
        key = f"D_co_at_{math.degrees(probe.theta_z):.2f}_{math.degrees(probe.phi):.1f}_dB"
        result.summary[key] = float(directivity(co, system.P_rad))
    return result


def pattern_grid(system: RadiatingSystem, theta_z: np.ndarray, phi: np.ndarray,
                 workers: int = None) -> FarFieldResult:
    """Pattern at the outer product of θ_z and φ samples (radians)."""
    tt, pp = np.meshgrid(np.asarray(theta_z, dtype=float), np.asarray(phi, dtype=float), indexing="ij")
    tt, pp = tt.ravel(), pp.ravel()
    E_co, E_cr = copol_fields(system, tt, pp, workers)
    return FarFieldResult(
        directions=[Direction(float(t), float(p)) for t, p in zip(tt, pp)],
        theta_z_signed=tt, phi_label=pp, E_co=E_co, E_cr=E_cr, P_rad=system.P_rad,
    )


def sidelobes(result: FarFieldResult, side: int = 1) -> List[Dict[str, float]]:
    """Local maxima of D_co beyond the first null on one side of boresight, nearest first."""
    order = np.argsort(result.theta_z_signed * side)
    angles = result.theta_z_signed[order] * side
    level = result.D_co[order]
    keep = angles >= 0.0
    angles, level = angles[keep], level[keep]
    lobes = []
    past_null = False
    for i in range(1, len(level) - 1):
        if level[i] < level[i - 1] and level[i] <= level[i + 1]:
            past_null = True
        elif past_null and level[i] > level[i - 1] and level[i] >= level[i + 1]:
            lobes.append({"theta_z_deg": math.degrees(side * angles[i]), "D_co_dB": float(level[i])})
    return lobes


def hemisphere_power(system: RadiatingSystem, n_theta: int = 90, n_phi: int = 72,
                     theta_max: float = 0.5 * math.pi, workers: int = None) -> float:
    """(1/2η0)∫|Ẽ_t|²dΩ over 0 ≤ θ_z ≤ theta_max by the midpoint rule (W).

    Ẽ_t = Ẽ − û(û·Ẽ) is the transverse far field. The bare radiation integral
    keeps a radial part that carries no power.
    """
    dt = theta_max / n_theta
    dp = 2.0 * math.pi / n_phi
    theta_z = (np.arange(n_theta) + 0.5) * dt
    phi = (np.arange(n_phi) + 0.5) * dp
    tt, pp = np.meshgrid(theta_z, phi, indexing="ij")
    u = direction_vectors(tt.ravel(), pp.ravel())
    E = radiate(system.sources, u, system.k, workers)
    E_t = E - np.sum(E * u, axis=-1, keepdims=True) * u
    intensity = np.sum(np.abs(E_t) ** 2, axis=-1) / (2.0 * settings.ETA0)
    return float(np.sum(intensity * np.sin(tt.ravel())) * dt * dp)
