"""Unit-cell tessellation of the reflectarray annulus θ1 ≤ θ′ ≤ θ0."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.optimize import brentq

from config import settings
from core.errors import GeometryWarning
from geometry.paraboloid import (
    DishConfig,
    Region,
    SurfaceMesh,
    SurfaceSample,
    build_mesh,
    meridian_arc_length,
)


@dataclass(frozen=True)
class UnitCell:
    """One reflectarray element on the annulus.

    ``a`` and ``b`` are the nominal λ0/2 element dimensions; the realized
    cell differs slightly because ring and cell counts are rounded to close
    the annulus.
    """
    ring: int
    index_in_ring: int
    center: SurfaceSample
    a: float
    b: float
    subsamples: SurfaceMesh
    theta_li: float

    @property
    def area(self) -> float:
        return float(self.subsamples.dS.sum())


def theta_at_arc_length(s: float, F: float, theta_hi: float) -> float:
    """Invert the meridian arc length; ``theta_hi`` brackets the root from above."""
    return brentq(lambda t: float(meridian_arc_length(t, F)) - s, 0.0, theta_hi, xtol=1e-15, rtol=1e-14)


def ring_boundaries(cfg: DishConfig) -> Tuple[np.ndarray, float]:
    """θ′ of the ring edges (inner to outer) and the realized ring width along the meridian."""
    b = 0.5 * cfg.lambda0
    s1 = float(meridian_arc_length(cfg.theta1, cfg.F))
    s0 = float(meridian_arc_length(cfg.theta0, cfg.F))
    arc = s0 - s1
    if arc < b:
        return np.zeros(0), 0.0
    n_rings = max(1, int(round(arc / b)))
    width = arc / n_rings
    edges = [cfg.theta1]
    for j in range(1, n_rings):
        edges.append(theta_at_arc_length(s1 + j * width, cfg.F, cfg.theta0))
    edges.append(cfg.theta0)
    return np.asarray(edges), width


def _ring_cells(cfg: DishConfig, ring: int, theta_lo: float, theta_hi: float,
                theta_c: float, subgrid: int) -> List[UnitCell]:
    a = b = 0.5 * cfg.lambda0
    r_c = cfg.F / math.cos(0.5 * theta_c) ** 2
    n_cells = max(1, int(round(2.0 * math.pi * r_c * math.sin(theta_c) / a)))
    dphi_cell = 2.0 * math.pi / n_cells
    dtheta_sub = (theta_hi - theta_lo) / subgrid
    dphi_sub = dphi_cell / subgrid

    offsets = np.arange(subgrid) + 0.5
    theta_sub = theta_lo + offsets * dtheta_sub
    phi_start = np.arange(n_cells) * dphi_cell
    # (cell, θ-sub, φ-sub) so each cell's samples are contiguous
    tt = np.broadcast_to(theta_sub[None, :, None], (n_cells, subgrid, subgrid))
    pp = phi_start[:, None, None] + (offsets * dphi_sub)[None, None, :]
    pp = np.broadcast_to(pp, (n_cells, subgrid, subgrid))
    ring_mesh = build_mesh(tt, pp, dtheta_sub, dphi_sub, cfg.F, Region.REFLECTARRAY)

    phi_c = phi_start + 0.5 * dphi_cell
    centers = build_mesh(np.full(n_cells, theta_c), phi_c, theta_hi - theta_lo, dphi_cell,
                         cfg.F, Region.REFLECTARRAY)
    per_cell = subgrid * subgrid
    return [
        UnitCell(
            ring=ring,
            index_in_ring=j,
            center=centers[j],
            a=a,
            b=b,
            subsamples=ring_mesh.slice(j * per_cell, (j + 1) * per_cell),
            theta_li=0.5 * theta_c,
        )
        for j in range(n_cells)
    ]


def tessellate_annulus(cfg: DishConfig, subgrid: int = settings.CELL_SUBGRID) -> List[UnitCell]:
    """Rings of λ0/2 cells laid along the meridian arc, innermost ring first.

    Ring count is round(arc/b); within ring k the cell count is
    round(2π·ρ_k/a) with cell centres uniform in φ′, ordered by increasing φ′.
    """
    edges, width = ring_boundaries(cfg)
    if edges.size == 0:
        warnings.warn(
            f"annulus D0={cfg.D0} m..D={cfg.D} m is narrower than one cell; no reflectarray cells",
            GeometryWarning,
            stacklevel=2,
        )
        return []
    s1 = float(meridian_arc_length(cfg.theta1, cfg.F))
    cells: List[UnitCell] = []
    for ring in range(edges.size - 1):
        theta_c = theta_at_arc_length(s1 + (ring + 0.5) * width, cfg.F, cfg.theta0)
        cells.extend(_ring_cells(cfg, ring, edges[ring], edges[ring + 1], theta_c, subgrid))
    return cells


def ring_count(cells: List[UnitCell]) -> int:
    return 1 + max(c.ring for c in cells) if cells else 0


def annulus_mesh(cells: List[UnitCell]) -> Tuple[SurfaceMesh, np.ndarray]:
    """All cell subsamples as one mesh plus the owning cell index of every sample."""
    mesh = SurfaceMesh.concatenate([c.subsamples for c in cells], Region.REFLECTARRAY)
    owner = np.concatenate(
        [np.full(len(c.subsamples), i, dtype=np.int64) for i, c in enumerate(cells)]
    ) if cells else np.zeros(0, dtype=np.int64)
    return mesh, owner


def cap_area(theta_max: float, F: float) -> float:
    """Closed-form paraboloid cap area, (8πF²/3)(sec³(θ/2) − 1)."""
    return 8.0 * math.pi * F * F / 3.0 * (1.0 / math.cos(0.5 * theta_max) ** 3 - 1.0)


def cell_area_check(cell: UnitCell) -> float:
    """Relative deviation of the quadrature cell area from the nominal a·b."""
    return cell.area / (cell.a * cell.b) - 1.0


__all__ = [
    "UnitCell",
    "tessellate_annulus",
    "annulus_mesh",
    "ring_boundaries",
    "ring_count",
    "theta_at_arc_length",
    "cap_area",
    "cell_area_check",
]
