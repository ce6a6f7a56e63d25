from pathlib import Path

from config import settings
from results import csv_store, plots
from scattering.dyads import dyad_table_frame
from stages.base import BaseStage


class ReportStage(BaseStage):
    """Writes CSVs (with provenance headers), SVG plots and summary.yaml into the output directory."""
    name = "ReportStage"
    key = "report"

    def run(self, state, logs):
        run_cfg = state["run_config"]
        out = Path(state["output_dir"])
        out.mkdir(parents=True, exist_ok=True)
        outputs = dict(state.get("outputs") or {})
        command = state["command"]

        for label, result in (state.get("patterns") or {}).items():
            meta = csv_store.run_metadata(run_cfg, table="pattern", cut=label)
            outputs[f"pattern_{label}"] = str(csv_store.write_pattern_csv(out / f"pattern_{label}.csv", result, meta))

        config = state.get("switch_config")
        model = state.get("model")
        if config is not None and command == "design":
            path = csv_store.write_states_csv(out / "switch_states.csv", model.cells, config,
                                              csv_store.run_metadata(run_cfg, table="switch_states"))
            outputs["switch_states"] = str(path)

        source = state.get("source")
        if source is not None and source.table:
            path = csv_store.write_table(out / "dyads.csv", dyad_table_frame(source),
                                         csv_store.run_metadata(run_cfg, table="dyads"))
            outputs["dyads"] = str(path)

        if run_cfg.output.plots:
            for label in (state.get("patterns") or {}):
                if label.startswith("reference_") and command != "reference":
                    continue
                csvs = [outputs[f"pattern_{label}"]]
                ref_label = label.replace("ims_", "reference_", 1)
                if ref_label != label and f"pattern_{ref_label}" in outputs:
                    csvs.append(outputs[f"pattern_{ref_label}"])
                svg = plots.plot_cut_svg(csvs, out / f"pattern_{label}.svg",
                                         labels=[label, ref_label][:len(csvs)])
                outputs[f"plot_{label}"] = str(svg)
            if "switch_states" in outputs:
                outputs["plot_switch_states"] = str(plots.plot_state_map_svg(outputs["switch_states"],
                                                                             out / "switch_states.svg"))
            if command == "sweep":
                outputs["plot_sweep"] = str(plots.plot_sweep_svg(out / "sweep.csv", out / "sweep.svg"))

        if command == "sweep":
            outputs["sweep"] = str(out / "sweep.csv")
            outputs["sweep_checkpoint"] = str(out / "sweep.checkpoint")

        summary = dict(state.get("summary") or {})
        summary["run"] = {
            "command": command,
            "config_name": run_cfg.name,
            "config_hash": run_cfg.config_hash(),
            "version": settings.VERSION,
            "samples_per_wavelength": float(run_cfg.mesh.samples_per_wavelength),
            "dyad_source": run_cfg.dyads.source,
            "db_convention": csv_store.DB_CONVENTION,
        }
        if model is not None:
            summary["run"]["P_rad_W"] = float(model.P_rad)
            summary["run"]["rings"] = model.n_rings
            summary["run"]["cells"] = len(model.cells)
        outputs["summary"] = str(csv_store.write_summary(out / "summary.yaml", summary))
        self.log(logs, f"Wrote {len(outputs)} artifacts to {out}")
        outputs["log"] = str(out / "run.log")
        csv_store.write_log(out / "run.log", list(state.get("logs", [])) + logs)
        return {"outputs": outputs, "summary": summary}
