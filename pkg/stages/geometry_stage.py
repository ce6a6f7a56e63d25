import math
import warnings
from pathlib import Path

from config import settings
from feed.feed_model import edge_taper_db
from nullsteer.design import build_model, reference_mesh, reference_system
from scattering.dyads import RUC_DATASHEET, DyadKind, make_source
from stages.base import BaseStage


def resolve_table_path(table_path, config_path=None):
    """Dyad table paths are relative to the config file, then the working directory, then assets/dyads."""
    if table_path is None:
        return None
    path = Path(table_path)
    if path.is_absolute():
        return path
    candidates = []
    if config_path:
        candidates.append(Path(config_path).parent / path)
    candidates += [Path.cwd() / path, settings.DYADS_DIR / path]
    return next((c for c in candidates if c.is_file()), candidates[0])


class GeometryStage(BaseStage):
    """Meshes the reflector, tiles the rim with cells and builds the reference dish."""
    name = "GeometryStage"
    key = "geometry"

    def run(self, state, logs):
        run_cfg = state["run_config"]
        source = make_source(run_cfg.dyads.source,
                             resolve_table_path(run_cfg.dyads.table_path, state.get("config_path")))
        self.log(logs, f"Dyad source: {source.describe()}")
        if source.kind is DyadKind.RUC_TABLE2:
            self.log(logs, f"Unit cell: {RUC_DATASHEET.describe()}")
        spw = run_cfg.mesh.samples_per_wavelength
        dish = run_cfg.dish_config()
        self.log(logs, f"Dish D={dish.D} m, D0={dish.D0} m, F={dish.F} m, f={dish.f / 1e9:.4g} GHz, "
                       f"theta0={math.degrees(dish.theta0):.3f} deg, theta1={math.degrees(dish.theta1):.3f} deg")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            model = build_model(dish, source, run_cfg.feed.E0, run_cfg.feed.vector_model, spw,
                                run_cfg.mesh.cell_subgrid)
        for w in caught:
            self.log(logs, f"[WARNING] {w.message}")
        self.log(logs, f"Reflector mesh: {len(model.reflector)} samples; reflectarray: "
                       f"{model.n_rings} rings, {len(model.cells)} cells, {len(model.annulus)} samples")
        self.log(logs, f"Feed power P_rad={model.P_rad:.6e} W, edge taper {edge_taper_db(dish):.2f} dB")
        ref_mesh = reference_mesh(dish, spw)
        reference = reference_system(dish, model.feed, spw, mesh=ref_mesh)
        self.log(logs, f"Reference dish mesh: {len(ref_mesh)} samples")
        return {"source": source, "model": model, "reference_mesh": ref_mesh, "reference": reference}
