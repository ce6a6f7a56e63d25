"""
CSV result files with a provenance header block.

Every table starts with ``# key: value`` lines (config hash, code version,
mesh density, dB conventions) followed by a plain CSV body, so
``pandas.read_csv(path, comment="#")`` reads the data and ``read_header``
recovers the provenance.
"""

import math
import os
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import pandas as pd
import yaml

from config import settings
from core.errors import ContractViolation, DomainError
from farfield.patterns import FarFieldResult
from geometry.tessellation import UnitCell
from nullsteer.search import SwitchConfig
from scattering.dyads import SwitchState

DB_CONVENTION = "directivity and gain 10log10; field and dyad magnitudes 20log10"
STATES_COLUMNS = ["ring", "index_in_ring", "theta_p_deg", "phi_p_deg", "state"]


def run_metadata(run_cfg, **extra) -> Dict[str, str]:
    """Header fields that make a result file reproducible on its own."""
    meta = {
        "generator": "rimnullx",
        "version": settings.VERSION,
        "config_name": run_cfg.name,
        "config_hash": run_cfg.config_hash(),
        "samples_per_wavelength": run_cfg.mesh.samples_per_wavelength,
        "cell_subgrid": run_cfg.mesh.cell_subgrid,
        "dyad_source": run_cfg.dyads.source,
        "angles": "degrees",
        "db_convention": DB_CONVENTION,
        "created": datetime.now().isoformat(timespec="seconds"),
    }
    meta.update(extra)
    return {k: str(v) for k, v in meta.items()}


def header_lines(meta: Dict[str, str]) -> List[str]:
    return [f"# {k}: {v}" for k, v in meta.items()]


def write_table(path, df: pd.DataFrame, meta: Dict[str, str]) -> Path:
    """Write header block and table; the file is replaced atomically."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(header_lines(meta)) + "\n")
        df.to_csv(fh, index=False)
    os.replace(tmp, path)
    return path


def start_table(path, columns: Sequence[str], meta: Dict[str, str]) -> Path:
    """Header block and column row only, for tables filled by ``append_rows``."""
    return write_table(path, pd.DataFrame(columns=list(columns)), meta)


def append_rows(path, rows: List[dict], columns: Sequence[str]) -> None:
    with open(path, "a", encoding="utf-8", newline="") as fh:
        pd.DataFrame(rows, columns=list(columns)).to_csv(fh, index=False, header=False)
        fh.flush()
        os.fsync(fh.fileno())


def read_header(path) -> Dict[str, str]:
    meta = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition(":")
            meta[key.strip()] = value.strip()
    return meta


def read_table(path) -> Tuple[pd.DataFrame, Dict[str, str]]:
    path = Path(path)
    if not path.is_file():
        raise DomainError(f"result file not found: {path}")
    return pd.read_csv(path, comment="#"), read_header(path)


def write_pattern_csv(path, result: FarFieldResult, meta: Dict[str, str]) -> Path:
    return write_table(path, result.to_frame(), meta)


def states_frame(cells: Sequence[UnitCell], config: SwitchConfig) -> pd.DataFrame:
    if len(cells) != len(config):
        raise ContractViolation(f"{len(cells)} cells but {len(config)} switch states")
    return pd.DataFrame({
        "ring": [c.ring for c in cells],
        "index_in_ring": [c.index_in_ring for c in cells],
        "theta_p_deg": [math.degrees(c.center.theta_p) for c in cells],
        "phi_p_deg": [math.degrees(c.center.phi_p) for c in cells],
        "state": [s.value for s in config.states],
    }, columns=STATES_COLUMNS)


def write_states_csv(path, cells: Sequence[UnitCell], config: SwitchConfig, meta: Dict[str, str]) -> Path:
    meta = dict(meta)
    meta.setdefault("selector", config.selector)
    meta.setdefault("residual_re", repr(config.residual.real))
    meta.setdefault("residual_im", repr(config.residual.imag))
    return write_table(path, states_frame(cells, config), meta)


def read_states(path, cells: Sequence[UnitCell]) -> SwitchConfig:
    """Switch map from a states CSV, checked cell by cell against a tessellation."""
    df, meta = read_table(path)
    missing = [c for c in ("ring", "index_in_ring", "state") if c not in df.columns]
    if missing:
        raise ContractViolation(f"states file {Path(path).name} lacks columns: {missing}")
    keys = tuple((int(r), int(i)) for r, i in zip(df["ring"], df["index_in_ring"]))
    expected = tuple((c.ring, c.index_in_ring) for c in cells)
    if len(keys) != len(expected):
        raise ContractViolation(f"states file has {len(keys)} cells, tessellation has {len(expected)}")
    if keys != expected:
        bad = next(i for i, (a, b) in enumerate(zip(keys, expected)) if a != b)
        raise ContractViolation(f"states file row {bad} is cell {keys[bad]}, expected {expected[bad]}")
    try:
        states = tuple(SwitchState(str(s).strip().lower()) for s in df["state"])
    except ValueError as e:
        raise ContractViolation(f"states file {Path(path).name}: {e}") from e
    residual = complex(float(meta.get("residual_re", 0.0)), float(meta.get("residual_im", 0.0)))
    return SwitchConfig(keys, states, residual, selector=meta.get("selector", "imported"))


def write_summary(path, summary: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(yaml.safe_dump(summary, sort_keys=False), encoding="utf-8")
    return path


def write_log(path, logs: Sequence[str]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(logs) + "\n", encoding="utf-8")
    return path
