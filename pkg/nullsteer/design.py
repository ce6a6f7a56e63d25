"""
Dish models and single-null designs.

A DishModel holds everything about one geometry that does not depend on
the commanded null: meshes, cells, feed power and the reflector currents.
It is immutable, so sweeps share one model across worker threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from config import settings
from farfield.patterns import RadiatingSystem, build_system, directivity, field_at, pattern_cut
from farfield.radiation import SourceCurrents
from feed.feed_model import FeedConfig, VectorModel, feed_power
from geometry.paraboloid import DishConfig, SurfaceMesh, mesh_reflector
from geometry.tessellation import UnitCell, annulus_mesh, tessellate_annulus
from nullsteer.contributions import CellContributions, cell_contributions
from nullsteer.search import NullSpec, SwitchConfig, apply_states, serial_search
from scattering.dyads import DyadSource


@dataclass(frozen=True)
class DishModel:
    cfg: DishConfig
    feed: FeedConfig
    P_rad: float
    reflector: SurfaceMesh
    cells: Tuple[UnitCell, ...]
    annulus: SurfaceMesh
    owner: np.ndarray
    source: DyadSource
    reflector_system: RadiatingSystem
    samples_per_wavelength: float

    @property
    def n_rings(self) -> int:
        return 1 + max(c.ring for c in self.cells) if self.cells else 0

    def ims_system(self, cell_dyads: np.ndarray, label: str = "ims") -> RadiatingSystem:
        """Reflector plus reflectarray with the given per-cell dyads."""
        if not self.cells:
            return self.reflector_system
        annulus = build_system(self.feed, self.P_rad, annulus=self.annulus, owner=self.owner,
                               cell_dyads=cell_dyads)
        return RadiatingSystem(
            SourceCurrents.concatenate([self.reflector_system.sources, annulus.sources]),
            self.feed.k, self.feed.polarization, self.P_rad, label,
        )


def build_model(cfg: DishConfig, source: DyadSource, E0: complex = 1.0 + 0.0j,
                vector_model: VectorModel = VectorModel.NORMALIZED,
                samples_per_wavelength: float = settings.SAMPLES_PER_WAVELENGTH,
                subgrid: int = settings.CELL_SUBGRID) -> DishModel:
    feed = FeedConfig.for_dish(cfg, E0=E0, vector_model=vector_model)
    P_rad = feed_power(feed, cfg.theta0)
    reflector = mesh_reflector(cfg, samples_per_wavelength)
    cells = tuple(tessellate_annulus(cfg, subgrid)) if cfg.D0 < cfg.D else ()
    annulus, owner = annulus_mesh(list(cells))
    return DishModel(
        cfg=cfg,
        feed=feed,
        P_rad=P_rad,
        reflector=reflector,
        cells=cells,
        annulus=annulus,
        owner=owner,
        source=source,
        reflector_system=build_system(feed, P_rad, reflector=reflector, label="reflector"),
        samples_per_wavelength=samples_per_wavelength,
    )


def reference_mesh(cfg: DishConfig,
                   samples_per_wavelength: float = settings.SAMPLES_PER_WAVELENGTH) -> SurfaceMesh:
    """Solid dish of the full diameter D, meshed out to θ0."""
    full = cfg.full_dish()
    return mesh_reflector(full, samples_per_wavelength, theta_max=full.theta0)


def reference_system(cfg: DishConfig, feed: FeedConfig,
                     samples_per_wavelength: float = settings.SAMPLES_PER_WAVELENGTH,
                     mesh: SurfaceMesh = None) -> RadiatingSystem:
    """PEC currents of the unmodified reference dish."""
    if mesh is None:
        mesh = reference_mesh(cfg, samples_per_wavelength)
    return build_system(feed, feed_power(feed, cfg.theta0), reflector=mesh, label="reference")


@dataclass(frozen=True)
class DesignOutcome:
    null: NullSpec
    config: SwitchConfig
    contributions: CellContributions
    cell_dyads: np.ndarray
    system: RadiatingSystem
    E_co_null: complex
    E_cr_null: complex
    D_null_dB: float
    D_null_reference_dB: float

    @property
    def null_depth_dB(self) -> float:
        return self.D_null_reference_dB - self.D_null_dB


def design_null(model: DishModel, null: NullSpec, reference: Optional[RadiatingSystem] = None,
                selector="serial", workers: int = None) -> DesignOutcome:
    """Serial search at one null, then re-evaluation of the full IMS field there."""
    T0, _ = field_at(model.reflector_system, null.direction, workers) if len(model.reflector) else (0j, 0j)
    contributions = cell_contributions(model.cells, model.source, model.feed, null.direction, model.cfg.f)
    config = serial_search(model.cells, null, T0, contributions, selector)
    dyads = apply_states(model.cells, config, model.source, model.cfg.f)
    system = model.ims_system(dyads)
    E_co, E_cr = field_at(system, null.direction, workers)
    if reference is None:
        reference = reference_system(model.cfg, model.feed, model.samples_per_wavelength)
    ref_co, _ = field_at(reference, null.direction, workers)
    return DesignOutcome(
        null=null,
        config=config,
        contributions=contributions,
        cell_dyads=dyads,
        system=system,
        E_co_null=E_co,
        E_cr_null=E_cr,
        D_null_dB=float(directivity(E_co, model.P_rad)),
        D_null_reference_dB=float(directivity(ref_co, model.P_rad)),
    )


def boresight_peak(system: RadiatingSystem, phi: float, half_width_deg: float = 0.2,
                   step_deg: float = 0.01, workers: int = None) -> float:
    """Peak co-polar directivity over a short cut through boresight (dB)."""
    h = math.radians(half_width_deg)
    cut = pattern_cut(system, phi, -h, h, math.radians(step_deg), workers=workers)
    return float(np.max(cut.D_co))
