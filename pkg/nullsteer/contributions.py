"""Co-polar field contributions at a null direction, per region and per cell."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from config import settings
from farfield.ludwig import copol_vectors
from farfield.patterns import build_system, field_at
from farfield.radiation import Direction
from feed.feed_model import FeedConfig, incident_on_mesh
from geometry.paraboloid import SurfaceMesh
from geometry.tessellation import UnitCell, annulus_mesh
from scattering.currents import dyad_coefficients, unit_dyad_currents
from scattering.dyads import DyadSource, ReflectionDyad, SwitchState


def reflector_field_at(mesh: SurfaceMesh, feed: FeedConfig, direction: Direction,
                       workers: int = None) -> complex:
    """Co-polar field T0 of the solid reflector region alone (V)."""
    if len(mesh) == 0:
        return 0j
    co, _ = field_at(build_system(feed, 1.0, reflector=mesh), direction, workers)
    return co


def cell_basis_fields(cells: Sequence[UnitCell], feed: FeedConfig, direction: Direction) -> np.ndarray:
    """Co-polar field of every cell under each unit dyad, shape (Ncell, 4).

    Column order follows DYAD_BASIS, so a cell with dyad R radiates
    Σ_ab R_ab·basis[:, ab] at ``direction``.
    """
    if not cells:
        return np.zeros((0, 4), dtype=complex)
    mesh, owner = annulus_mesh(list(cells))
    J = unit_dyad_currents(mesh, incident_on_mesh(feed, mesh))
    u = direction.unit_vector
    c_co, _ = copol_vectors(direction.theta_z, direction.phi, feed.polarization)
    phase = np.exp(1j * feed.k * np.sum(mesh.position * u, axis=-1))
    prefactor = -1j * feed.k * settings.ETA0 / (4.0 * math.pi)
    per_sample = prefactor * np.sum(J * c_co, axis=-1) * (phase * mesh.dS)[:, None]
    starts = np.flatnonzero(np.r_[True, owner[1:] != owner[:-1]])
    return np.add.reduceat(per_sample, starts, axis=0)


def cell_dyads(cells: Sequence[UnitCell], source: DyadSource, states: Sequence[SwitchState],
               f: float) -> np.ndarray:
    """Per-cell, per-state dyad matrices (Ncell, S, 2, 2); lookup failures propagate."""
    out = np.empty((len(cells), len(states), 2, 2), dtype=complex)
    for i, cell in enumerate(cells):
        for s, state in enumerate(states):
            out[i, s] = source.lookup(state, cell.theta_li, f).matrix
    return out


@dataclass(frozen=True)
class CellContributions:
    """Field c_i(s) of cell i in state s at one direction, independent of other cells."""
    keys: Tuple[Tuple[int, int], ...]
    states: Tuple[SwitchState, ...]
    values: np.ndarray
    dyads: np.ndarray

    def __len__(self) -> int:
        return len(self.keys)

    def column(self, state: SwitchState) -> int:
        return self.states.index(SwitchState(state))


def cell_contributions(cells: Sequence[UnitCell], source: DyadSource, feed: FeedConfig,
                       direction: Direction, f: float) -> CellContributions:
    states = source.states
    basis = cell_basis_fields(cells, feed, direction)
    dyads = cell_dyads(cells, source, states, f)
    values = np.einsum("nsk,nk->ns", dyads.reshape(len(cells), len(states), 4), basis)
    return CellContributions(
        keys=tuple((c.ring, c.index_in_ring) for c in cells),
        states=states,
        values=values,
        dyads=dyads,
    )


def cell_contribution(cell: UnitCell, state, feed: FeedConfig, direction: Direction,
                      source: DyadSource = None, f: float = None, dyad: ReflectionDyad = None) -> complex:
    """Co-polar field of one cell in one state, from its own subsamples only."""
    if dyad is None:
        dyad = source.lookup(SwitchState(state), cell.theta_li, f)
    basis = cell_basis_fields([cell], feed, direction)[0]
    return complex(np.sum(dyad_coefficients(dyad) * basis))


__all__: List[str] = [
    "reflector_field_at",
    "cell_basis_fields",
    "cell_dyads",
    "CellContributions",
    "cell_contributions",
    "cell_contribution",
]
