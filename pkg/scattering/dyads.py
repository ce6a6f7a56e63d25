"""
Reflection dyads and the sources they are looked up from.

A dyad maps the incident (TM, TE) field components to the reflected ones in
the local basis built by ``scattering.currents.local_polarization_basis``;
the TM/θ and TE/φ labels of tabulated data are interchangeable. In this
convention a perfect conductor is -I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, Tuple

import numpy as np
import pandas as pd

from config import settings
from core.errors import DomainError, DyadLookupError

PASSIVITY_SLACK = 1e-6


class SwitchState(str, Enum):
    OFF = "off"
    ON = "on"


class DyadKind(str, Enum):
    PEC = "pec"
    IDEAL_ONE_BIT = "ideal_one_bit"
    RUC_TABLE2 = "ruc_table2"
    USER_TABLE = "user_table"


@dataclass(frozen=True)
class ReflectionDyad:
    r_tt: complex
    r_tp: complex
    r_pt: complex
    r_pp: complex

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.r_tt, self.r_tp], [self.r_pt, self.r_pp]], dtype=complex)

    @classmethod
    def from_polar(cls, tt: Tuple[float, float], tp: Tuple[float, float],
                   pt: Tuple[float, float], pp: Tuple[float, float]) -> "ReflectionDyad":
        """Build from (magnitude, phase in degrees) pairs."""
        c = lambda mp: complex(mp[0] * np.exp(1j * math.radians(mp[1])))
        return cls(c(tt), c(tp), c(pt), c(pp))

    @classmethod
    def scalar(cls, value: complex) -> "ReflectionDyad":
        return cls(complex(value), 0j, 0j, complex(value))

    def max_singular_value(self) -> float:
        return float(np.linalg.svd(self.matrix, compute_uv=False)[0])

    def is_passive(self) -> bool:
        return self.max_singular_value() <= 1.0 + PASSIVITY_SLACK

    def co_pol_loss_db(self) -> float:
        """Worst co-polar magnitude in dB (20·log10)."""
        return 20.0 * math.log10(min(abs(self.r_tt), abs(self.r_pp)))


PEC_DYAD = ReflectionDyad.scalar(-1.0)
IDEAL_DYADS = {
    SwitchState.ON: ReflectionDyad.scalar(1j),
    SwitchState.OFF: ReflectionDyad.scalar(-1j),
}

# Unit cell reflection dyad at θ_inc = 31.25°, φ_inc = 180°, 1.5 GHz.
TABLE2_DYADS = {
    SwitchState.ON: ReflectionDyad.from_polar(
        tt=(0.97, 93.73), tp=(0.185, -146.18), pt=(0.187, 160.74), pp=(0.97, 100.65)),
    SwitchState.OFF: ReflectionDyad.from_polar(
        tt=(0.95, -127.12), tp=(0.274, 12.92), pt=(0.272, -82.68), pp=(0.95, -123.54)),
}


@dataclass(frozen=True)
class RucDatasheet:
    """Physical description of the 1-bit unit cell the tabulated dyads came from."""
    L_mm: float = 51.0
    W_mm: float = 51.0
    d1_mm: float = 13.5
    d2_mm: float = 4.167
    eps_r: float = 2.55
    tan_delta: float = 0.0017
    substrate_top: str = "Taconic TLX-8"
    substrate_bottom: str = "Rogers RT/Duroid 5880"
    diode: str = "Skyworks SMP-1320-040LF"
    diode_on: Dict[str, float] = field(default_factory=lambda: {"C_T_pF": 0.0, "R_S_ohm": 0.75, "L_S_nH": 0.45})
    diode_off: Dict[str, float] = field(default_factory=lambda: {"C_T_pF": 0.23, "R_S_ohm": 0.0, "L_S_nH": 0.45})

    def describe(self) -> str:
        return (f"{self.L_mm:g}x{self.W_mm:g} mm cell, {self.substrate_top} over {self.substrate_bottom} "
                f"(eps_r {self.eps_r}, tan_d {self.tan_delta}), PIN diode {self.diode}")


RUC_DATASHEET = RucDatasheet()

DyadKey = Tuple[SwitchState, float, float]


class DyadSource:
    """Immutable lookup of reflection dyads keyed by (state, frequency, θ_inc).

    ``theta_tolerance_deg`` bounds how far a requested incidence angle may sit
    from the nearest tabulated one. PEC and ideal sources ignore the key.
    """

    def __init__(self, kind: DyadKind, table: Dict[DyadKey, ReflectionDyad] = None,
                 theta_tolerance_deg: float = settings.USER_TABLE_THETA_TOLERANCE_DEG):
        self.kind = DyadKind(kind)
        self.table = dict(table or {})
        self.theta_tolerance_deg = theta_tolerance_deg
        for key, dyad in self.table.items():
            if not dyad.is_passive():
                raise DomainError(
                    f"dyad for {key} is not passive (max singular value {dyad.max_singular_value():.6f})")

    @property
    def states(self) -> Tuple[SwitchState, ...]:
        if self.kind is DyadKind.PEC:
            return (SwitchState.OFF,)
        if self.kind is DyadKind.IDEAL_ONE_BIT:
            return (SwitchState.OFF, SwitchState.ON)
        return tuple(s for s in SwitchState if any(k[0] is s for k in self.table))

    def lookup(self, state: SwitchState, theta_li: float, f: float) -> ReflectionDyad:
        """Dyad for ``state`` at local incidence ``theta_li`` (rad) and frequency ``f`` (Hz)."""
        state = SwitchState(state)
        if self.kind is DyadKind.PEC:
            return PEC_DYAD
        if self.kind is DyadKind.IDEAL_ONE_BIT:
            return IDEAL_DYADS[state]
        theta_deg = math.degrees(theta_li)
        candidates = [
            (abs(key[2] - theta_deg), key) for key in self.table
            if key[0] is state and math.isclose(key[1], f, rel_tol=1e-9)
        ]
        if candidates:
            distance, key = min(candidates, key=lambda c: (c[0], c[1][2]))
            if distance <= self.theta_tolerance_deg + 1e-9:
                return self.table[key]
        raise DyadLookupError(
            f"no {self.kind.value} dyad for state={state.value}, f={f:.6g} Hz, "
            f"theta_inc={theta_deg:.3f} deg (tolerance {self.theta_tolerance_deg} deg)")

    def describe(self) -> str:
        return f"{self.kind.value} ({len(self.table)} tabulated entries)"


def pec_source() -> DyadSource:
    return DyadSource(DyadKind.PEC)


def ideal_source() -> DyadSource:
    return DyadSource(DyadKind.IDEAL_ONE_BIT)


def table2_source() -> DyadSource:
    table = {
        (state, settings.DEFAULT_FREQUENCY_HZ, settings.TABLE2_THETA_INC_DEG): dyad
        for state, dyad in TABLE2_DYADS.items()
    }
    return DyadSource(DyadKind.RUC_TABLE2, table, settings.TABLE2_THETA_TOLERANCE_DEG)


USER_TABLE_COLUMNS = [
    "state", "frequency_hz", "theta_inc_deg",
    "tt_mag", "tt_phase_deg", "tp_mag", "tp_phase_deg",
    "pt_mag", "pt_phase_deg", "pp_mag", "pp_phase_deg",
]


def load_user_table(path) -> DyadSource:
    """Read a dyad table CSV (magnitudes linear, phases in degrees)."""
    path = Path(path)
    df = pd.read_csv(path, comment="#")
    missing = [c for c in USER_TABLE_COLUMNS if c not in df.columns]
    if missing:
        raise DomainError(f"dyad table {path.name} lacks columns: {missing}")
    table = {}
    for row in df.itertuples(index=False):
        key = (SwitchState(str(row.state).strip().lower()), float(row.frequency_hz), float(row.theta_inc_deg))
        table[key] = ReflectionDyad.from_polar(
            (row.tt_mag, row.tt_phase_deg), (row.tp_mag, row.tp_phase_deg),
            (row.pt_mag, row.pt_phase_deg), (row.pp_mag, row.pp_phase_deg),
        )
    return DyadSource(DyadKind.USER_TABLE, table, settings.USER_TABLE_THETA_TOLERANCE_DEG)


def dyad_table_frame(source: DyadSource) -> pd.DataFrame:
    """Tabulated entries of a source in the user-table CSV layout."""
    rows = []
    for (state, f, theta), dyad in sorted(source.table.items(), key=lambda kv: (kv[0][1], kv[0][2], kv[0][0].value)):
        row = {"state": state.value, "frequency_hz": f, "theta_inc_deg": theta}
        for name, value in (("tt", dyad.r_tt), ("tp", dyad.r_tp), ("pt", dyad.r_pt), ("pp", dyad.r_pp)):
            row[f"{name}_mag"] = abs(value)
            row[f"{name}_phase_deg"] = math.degrees(np.angle(value))
        rows.append(row)
    return pd.DataFrame(rows, columns=USER_TABLE_COLUMNS)


def make_source(kind: DyadKind, table_path=None) -> DyadSource:
    kind = DyadKind(kind)
    if kind is DyadKind.PEC:
        return pec_source()
    if kind is DyadKind.IDEAL_ONE_BIT:
        return ideal_source()
    if kind is DyadKind.RUC_TABLE2:
        return table2_source()
    if table_path is None:
        raise DomainError("user_table dyad source needs a table path")
    return load_user_table(table_path)


def dyad_matrices(dyads: Iterable[ReflectionDyad]) -> np.ndarray:
    """Stack dyads into an (N, 2, 2) complex array."""
    dyads = list(dyads)
    if not dyads:
        return np.zeros((0, 2, 2), dtype=complex)
    return np.stack([d.matrix for d in dyads])
