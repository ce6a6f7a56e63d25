"""SVG figures drawn only from result CSVs, so any figure can be redrawn from its files."""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from results.csv_store import read_header  # noqa: E402

FLOOR_DB = -40.0


def _title(meta, fallback):
    name = meta.get("config_name", fallback)
    return f"{name} (v{meta.get('version', '?')}, {meta.get('config_hash', '')[:8]})"


def plot_cut_svg(csv_paths, svg_path, labels=None, floor_db: float = FLOOR_DB) -> Path:
    """Rectangular D_co/D_cr versus θ_z for one or more pattern CSVs."""
    if isinstance(csv_paths, (str, Path)):
        csv_paths = [csv_paths]
    labels = labels or [Path(p).stem for p in csv_paths]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    peak = -np.inf
    for path, label in zip(csv_paths, labels):
        df = pd.read_csv(path, comment="#")
        co = df["D_co_dB"].to_numpy(dtype=float)
        cr = df["D_cr_dB"].to_numpy(dtype=float)
        peak = max(peak, np.nanmax(co[np.isfinite(co)]) if np.isfinite(co).any() else peak)
        ax.plot(df["theta_z_deg"], co, label=f"{label} co-pol")
        ax.plot(df["theta_z_deg"], cr, linestyle="--", linewidth=0.8, label=f"{label} cross-pol")
    if np.isfinite(peak):
        ax.set_ylim(peak + floor_db, peak + 3.0)
    ax.set_xlabel("θ_z (deg)")
    ax.set_ylabel("Directivity (dBi)")
    ax.set_title(_title(read_header(csv_paths[0]), Path(svg_path).stem))
    ax.grid(True)
    ax.legend(fontsize="small")
    fig.tight_layout()
    svg_path = Path(svg_path)
    svg_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(svg_path, format="svg")
    plt.close(fig)
    return svg_path


def plot_state_map_svg(csv_path, svg_path) -> Path:
    """Polar map of the reflectarray: one wedge per cell, ON dark and OFF light."""
    df = pd.read_csv(csv_path, comment="#")
    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="polar")
    for ring, group in df.groupby("ring", sort=True):
        n = len(group)
        width = 2.0 * np.pi / n
        left = np.radians(group["phi_p_deg"].to_numpy(dtype=float)) - 0.5 * width
        colors = np.where(group["state"].str.lower() == "on", "#1f3b73", "#d9e2f3")
        ax.bar(left, 1.0, width=width, bottom=ring, color=colors, edgecolor="white",
               linewidth=0.2, align="edge")
    n_rings = int(df["ring"].max()) + 1 if len(df) else 0
    ax.set_ylim(0, max(n_rings, 1))
    ax.set_yticks(np.arange(n_rings) + 0.5)
    ax.set_yticklabels([str(r) for r in range(n_rings)], fontsize="x-small")
    meta = read_header(csv_path)
    ax.set_title(_title(meta, Path(svg_path).stem) + "\nON dark / OFF light", fontsize="small")
    svg_path = Path(svg_path)
    svg_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(svg_path, format="svg")
    plt.close(fig)
    return svg_path


def plot_sweep_svg(csv_path, svg_path, value: str = "null_depth_dB") -> Path:
    """Null depth (or another column) against θ_z, one line per φ and D0."""
    df = pd.read_csv(csv_path, comment="#")
    df = df[df["error"].isna()] if "error" in df.columns else df
    fig, ax = plt.subplots(figsize=(7, 4))
    for (d0, phi), group in df.groupby(["D0", "phi_deg"], sort=True):
        group = group.sort_values("theta_z_deg")
        ax.plot(group["theta_z_deg"], group[value], marker="o", label=f"D0={d0:g} m, φ={phi:g}°")
    ax.set_xlabel("null θ_z (deg)")
    ax.set_ylabel(value)
    ax.grid(True)
    if len(df):
        ax.legend(fontsize="small")
    ax.set_title(_title(read_header(csv_path), Path(svg_path).stem))
    fig.tight_layout()
    svg_path = Path(svg_path)
    svg_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(svg_path, format="svg")
    plt.close(fig)
    return svg_path
