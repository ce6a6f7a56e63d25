"""
Serial search for per-cell switch states that cancel the co-polar field at a
commanded null.

Cells are visited innermost ring first and by increasing φ′ within a ring.
Each cell takes the state minimizing |T_{i−1} + c_i(s)|; exact ties go to
"off". The search makes a single pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from core.errors import ContractViolation, DomainError
from farfield.radiation import Direction
from geometry.tessellation import UnitCell
from nullsteer.contributions import CellContributions
from nullsteer.selectors import StateSelector
from scattering.dyads import DyadSource, SwitchState

DEFAULT_STATE_SET = (SwitchState.OFF, SwitchState.ON)


@dataclass(frozen=True)
class NullSpec:
    direction: Direction
    state_set: Tuple[SwitchState, ...] = DEFAULT_STATE_SET

    def __post_init__(self):
        states = tuple(SwitchState(s) for s in self.state_set)
        if not states:
            raise DomainError("null state set must not be empty")
        if self.direction.theta_z > 0.5 * math.pi:
            raise DomainError(
                f"null at theta_z={math.degrees(self.direction.theta_z):.3f} deg lies outside the forward hemisphere")
        # OFF first so that equal magnitudes resolve to OFF
        ordered = tuple(sorted(set(states), key=lambda s: s is not SwitchState.OFF))
        object.__setattr__(self, "state_set", ordered)

    @classmethod
    def from_degrees(cls, theta_z_deg: float, phi_deg: float, state_set=DEFAULT_STATE_SET) -> "NullSpec":
        return cls(Direction.from_degrees(theta_z_deg, phi_deg), tuple(state_set))


@dataclass(frozen=True)
class SwitchConfig:
    keys: Tuple[Tuple[int, int], ...]
    states: Tuple[SwitchState, ...]
    residual: complex
    T0: complex = 0j
    history: Tuple[float, ...] = field(default_factory=tuple)
    selector: str = "serial"

    def __post_init__(self):
        if len(self.keys) != len(self.states):
            raise ContractViolation(f"{len(self.keys)} cell keys but {len(self.states)} states")

    def __len__(self) -> int:
        return len(self.states)

    def count(self, state: SwitchState) -> int:
        return sum(1 for s in self.states if s is SwitchState(state))

    def as_dict(self) -> Dict[Tuple[int, int], SwitchState]:
        return dict(zip(self.keys, self.states))


def resolve_selector(selector: Union[str, StateSelector]) -> StateSelector:
    if isinstance(selector, StateSelector):
        return selector
    from config.registry import SELECTOR_REGISTRY
    try:
        return SELECTOR_REGISTRY[selector]()
    except KeyError:
        raise DomainError(f"unknown selector '{selector}', available: {sorted(SELECTOR_REGISTRY)}") from None


def _columns(contributions: CellContributions, null: NullSpec) -> List[int]:
    missing = [s.value for s in null.state_set if s not in contributions.states]
    if missing:
        raise ContractViolation(f"no contributions computed for states {missing}")
    return [contributions.column(s) for s in null.state_set]


def serial_search(cells: Sequence[UnitCell], null: NullSpec, T0: complex,
                  contributions: CellContributions,
                  selector: Union[str, StateSelector] = "serial") -> SwitchConfig:
    """Choose one state per cell so the running co-polar total at the null stays minimal."""
    if len(cells) != len(contributions):
        raise ContractViolation(f"{len(cells)} cells but {len(contributions)} contribution rows")
    keys = tuple((c.ring, c.index_in_ring) for c in cells)
    if keys != contributions.keys:
        raise ContractViolation("cell order does not match the contribution table")
    strategy = resolve_selector(selector)
    if not cells:
        return SwitchConfig((), (), complex(T0), complex(T0), (), strategy.name)
    cols = _columns(contributions, null)
    choices, totals = strategy.select(contributions.values[:, cols], complex(T0))
    states = tuple(null.state_set[c] for c in choices)
    return SwitchConfig(
        keys=keys,
        states=states,
        residual=complex(totals[-1]),
        T0=complex(T0),
        history=tuple(abs(t) for t in totals),
        selector=strategy.name,
    )


def verify_local_optimality(contributions: CellContributions, null: NullSpec,
                            config: SwitchConfig, rtol: float = 1e-12) -> List[int]:
    """Re-run every step and return the indices where a better state existed."""
    cols = _columns(contributions, null)
    total = complex(config.T0)
    violations = []
    for i, state in enumerate(config.states):
        row = contributions.values[i]
        chosen = total + row[contributions.column(state)]
        best = min(abs(total + row[c]) for c in cols)
        if abs(chosen) > best * (1.0 + rtol) + 1e-300:
            violations.append(i)
        total = chosen
    return violations


def apply_states(cells: Sequence[UnitCell], config: SwitchConfig, source: DyadSource,
                 f: float) -> np.ndarray:
    """Dyad matrix of every cell's selected state, shape (Ncell, 2, 2)."""
    if len(cells) != len(config):
        raise ContractViolation(f"{len(cells)} cells but {len(config)} switch states")
    out = np.empty((len(cells), 2, 2), dtype=complex)
    for i, (cell, key, state) in enumerate(zip(cells, config.keys, config.states)):
        if (cell.ring, cell.index_in_ring) != key:
            raise ContractViolation(f"cell {i} is ({cell.ring}, {cell.index_in_ring}) but the state map has {key}")
        out[i] = source.lookup(state, cell.theta_li, f).matrix
    return out


def uniform_config(cells: Sequence[UnitCell], state: SwitchState = SwitchState.OFF) -> SwitchConfig:
    keys = tuple((c.ring, c.index_in_ring) for c in cells)
    return SwitchConfig(keys, tuple(SwitchState(state) for _ in keys), 0j, selector="uniform")


def clustering_report(config: SwitchConfig) -> List[Dict[str, int]]:
    """Per ring: cell count, cells ON and contiguous same-state runs (the ring wraps around)."""
    rings: Dict[int, List[SwitchState]] = {}
    for (ring, _), state in sorted(zip(config.keys, config.states)):
        rings.setdefault(ring, []).append(state)
    report = []
    for ring, states in sorted(rings.items()):
        changes = sum(1 for a, b in zip(states, states[1:] + states[:1]) if a is not b)
        report.append({
            "ring": ring,
            "cells": len(states),
            "on": sum(1 for s in states if s is SwitchState.ON),
            "runs": max(1, changes),
        })
    return report
