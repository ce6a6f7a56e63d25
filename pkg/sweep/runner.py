"""
Null-direction and D0 sweeps.

Each grid point is an independent design (serial search plus probe cut),
evaluated by a thread pool; rows are appended to the CSV by the calling
thread in grid order, and the checkpoint is replaced atomically with the
point index added only after its row is on disk. Re-running with the same
configuration skips checkpointed points and drops CSV rows the checkpoint
does not list.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from core.errors import ConfigError, RimNullError
from core.parallel import resolve_workers, windowed_map
from efficiency.budget import radiation_efficiency
from farfield.patterns import RadiatingSystem
from nullsteer.design import DishModel, boresight_peak, build_model, design_null, reference_system
from nullsteer.search import NullSpec
from results import csv_store
from scattering.dyads import PEC_DYAD, DyadSource

SWEEP_COLUMNS = [
    "index", "D0", "theta_z_deg", "phi_deg", "n_rings", "null_depth_dB",
    "D_null_dB", "D_null_reference_dB", "D_peak_dB", "delta_D_dB", "e_r",
    "residual_abs", "E_cr_null_abs", "wall_time_s", "error",
]
TIMING_COLUMNS = ["wall_time_s"]


@dataclass(frozen=True)
class SweepPoint:
    index: int
    D0: float
    theta_z_deg: float
    phi_deg: float


@dataclass
class SweepGrid:
    points: List[SweepPoint]
    records: pd.DataFrame
    summary: Dict[str, float] = field(default_factory=dict)

    def deterministic_frame(self) -> pd.DataFrame:
        """Records without the timing columns, the part that must match across runs."""
        return self.records.drop(columns=TIMING_COLUMNS).reset_index(drop=True)


def grid_points(run_cfg) -> List[SweepPoint]:
    points = [SweepPoint(i, float(d0), float(t), float(p)) for i, (d0, t, p) in enumerate(run_cfg.sweep_points())]
    if not points:
        raise ConfigError("sweep.theta_z_deg: the sweep grid is empty")
    return points


@dataclass(frozen=True)
class _SweepContext:
    models: Dict[float, DishModel]
    reference: RadiatingSystem
    reference_peak_dB: float
    selector: str
    half_width_deg: float
    step_deg: float


def evaluate_point(ctx: _SweepContext, point: SweepPoint) -> dict:
    """One grid point; failures are recorded in the row instead of raised."""
    started = time.perf_counter()
    row = {c: np.nan for c in SWEEP_COLUMNS}
    row.update(index=point.index, D0=point.D0, theta_z_deg=point.theta_z_deg, phi_deg=point.phi_deg, error="")
    try:
        model = ctx.models[point.D0]
        null = NullSpec.from_degrees(point.theta_z_deg, point.phi_deg)
        outcome = design_null(model, null, ctx.reference, ctx.selector, workers=1)
        peak = boresight_peak(outcome.system, null.direction.phi, ctx.half_width_deg, ctx.step_deg, workers=1)
        e_r = radiation_efficiency(
            [(model.reflector, PEC_DYAD), (model.annulus, outcome.cell_dyads[model.owner])], model.feed)
        row.update(
            n_rings=model.n_rings,
            null_depth_dB=outcome.null_depth_dB,
            D_null_dB=outcome.D_null_dB,
            D_null_reference_dB=outcome.D_null_reference_dB,
            D_peak_dB=peak,
            delta_D_dB=peak - ctx.reference_peak_dB,
            e_r=e_r,
            residual_abs=abs(outcome.config.residual),
            E_cr_null_abs=abs(outcome.E_cr_null),
        )
    except (RimNullError, ArithmeticError, ValueError, KeyError) as e:
        row["error"] = f"{type(e).__name__}: {e}"
    row["wall_time_s"] = time.perf_counter() - started
    return row


def _read_checkpoint(path: Path, config_hash: str) -> set:
    if not path.is_file():
        return set()
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != f"# config_hash: {config_hash}":
        return set()
    return {int(x) for x in lines[1:] if x.strip()}


def _write_checkpoint(path: Path, config_hash: str, indices) -> None:
    """Replace the checkpoint atomically with the header and ``indices`` in ascending order."""
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(f"# config_hash: {config_hash}\n")
        fh.writelines(f"{i}\n" for i in sorted(indices))
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _reconcile(csv_path: Path, done: set) -> Tuple[set, int]:
    """Drop CSV rows the checkpoint does not list, and repeated indices; return (kept indices, dropped rows)."""
    records, meta = csv_store.read_table(csv_path)
    indices = records["index"].astype(int)
    keep = indices.isin(done) & ~indices.duplicated(keep="first")
    dropped = int((~keep).sum())
    if dropped:
        csv_store.write_table(csv_path, records[keep].reset_index(drop=True), meta)
    return set(indices[keep].tolist()), dropped


def run_sweep(run_cfg, source: DyadSource, out_dir, workers: int = None, resume: bool = True,
              limit: Optional[int] = None,
              on_point: Optional[Callable[[dict], None]] = None,
              models: Optional[Dict[float, DishModel]] = None,
              reference: Optional[RadiatingSystem] = None) -> SweepGrid:
    """Evaluate every grid point of ``run_cfg.sweep``.

    ``limit`` stops after that many new points. Prebuilt ``models`` (keyed by
    D0) and ``reference`` are reused; anything missing is built here.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "sweep.csv"
    ckpt_path = out_dir / "sweep.checkpoint"
    points = grid_points(run_cfg)
    config_hash = run_cfg.config_hash()

    done = _read_checkpoint(ckpt_path, config_hash) if resume and csv_path.is_file() else set()
    dropped = 0
    if done:
        done, dropped = _reconcile(csv_path, done)
    if not done:
        csv_store.start_table(csv_path, SWEEP_COLUMNS, csv_store.run_metadata(run_cfg, table="sweep"))
    _write_checkpoint(ckpt_path, config_hash, done)
    pending = [p for p in points if p.index not in done]
    if limit is not None:
        pending = pending[:limit]

    spw = run_cfg.mesh.samples_per_wavelength
    models = dict(models or {})
    for d0 in sorted({p.D0 for p in pending} - set(models)):
        models[d0] = build_model(run_cfg.dish_config(d0), source, run_cfg.feed.E0,
                                 run_cfg.feed.vector_model, spw, run_cfg.mesh.cell_subgrid)
    dish = run_cfg.dish_config()
    if reference is None and models:
        reference = reference_system(dish, next(iter(models.values())).feed, spw)
    ctx = _SweepContext(
        models=models,
        reference=reference,
        reference_peak_dB=boresight_peak(reference, 0.0, run_cfg.sweep.probe_half_width_deg,
                                         run_cfg.sweep.probe_step_deg) if reference else math.nan,
        selector=run_cfg.selector,
        half_width_deg=run_cfg.sweep.probe_half_width_deg,
        step_deg=run_cfg.sweep.probe_step_deg,
    )

    started = time.perf_counter()
    n_workers = resolve_workers(workers if workers is not None else run_cfg.workers)
    for row in windowed_map(lambda p: evaluate_point(ctx, p), pending, n_workers):
        csv_store.append_rows(csv_path, [row], SWEEP_COLUMNS)
        done.add(int(row["index"]))
        _write_checkpoint(ckpt_path, config_hash, done)
        if on_point is not None:
            on_point(row)

    records, _ = csv_store.read_table(csv_path)
    records = records.sort_values("index", kind="stable").reset_index(drop=True)
    records["error"] = records["error"].fillna("")
    failed = int((records["error"] != "").sum())
    return SweepGrid(
        points=points,
        records=records,
        summary={
            "points": len(points),
            "completed": len(records),
            "computed_this_run": len(pending),
            "rows_dropped_on_resume": dropped,
            "failed": failed,
            "workers": n_workers,
            "wall_time_s": time.perf_counter() - started,
            "reference_peak_dB": ctx.reference_peak_dB,
        },
    )
