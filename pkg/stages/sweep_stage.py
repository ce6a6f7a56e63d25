from sweep.runner import run_sweep
from stages.base import BaseStage


class SweepStage(BaseStage):
    """Null-direction / D0 grid, streamed to sweep.csv with a resumable checkpoint."""
    name = "SweepStage"
    key = "sweep"

    def run(self, state, logs):
        run_cfg = state["run_config"]
        model = state["model"]

        def on_point(row):
            status = row["error"] or f"depth {row['null_depth_dB']:.2f} dB, peak {row['D_peak_dB']:.3f} dBi"
            self.log(logs, f"Point {row['index']} (D0={row['D0']:g}, {row['theta_z_deg']:g}/{row['phi_deg']:g} deg): "
                           f"{status} in {row['wall_time_s']:.2f} s")

        grid = run_sweep(run_cfg, state["source"], state["output_dir"], workers=run_cfg.workers,
                         models={model.cfg.D0: model}, reference=state["reference"], on_point=on_point)
        if grid.summary["rows_dropped_on_resume"]:
            self.log(logs, f"Dropped {grid.summary['rows_dropped_on_resume']} sweep.csv rows missing from the checkpoint")
        self.log(logs, f"Sweep finished: {grid.summary['completed']}/{grid.summary['points']} points, "
                       f"{grid.summary['computed_this_run']} computed now, {grid.summary['failed']} failed")
        summary = dict(state.get("summary") or {})
        summary["sweep"] = {k: (float(v) if isinstance(v, float) else int(v)) for k, v in grid.summary.items()}
        return {"sweep": grid, "summary": summary}
