from efficiency.budget import efficiency_report, radiation_efficiency
from scattering.dyads import PEC_DYAD
from stages.base import BaseStage


class EfficiencyStage(BaseStage):
    """Radiation efficiency over every surface sample, then aperture efficiency and gain."""
    name = "EfficiencyStage"
    key = "efficiency"

    def run(self, state, logs):
        run_cfg = state["run_config"]
        model = state["model"]
        if state["command"] == "reference" or not model.cells:
            mesh = state["reference_mesh"] if state["command"] == "reference" else model.reflector
            e_r = radiation_efficiency([(mesh, PEC_DYAD)], model.feed)
            report = efficiency_report(e_r, model.cfg, run_cfg.efficiency.eta_s_eta_t, rim_reallocated=False)
        else:
            dyads = state["cell_dyads"]
            e_r = radiation_efficiency([(model.reflector, PEC_DYAD), (model.annulus, dyads[model.owner])],
                                       model.feed)
            report = efficiency_report(e_r, model.cfg, run_cfg.efficiency.eta_s_eta_t, rim_reallocated=True)
        self.log(logs, f"e_r={report.e_r:.6f}, eta_s*eta_t={report.eta_s_eta_t}, eta_ap={report.eta_ap:.4f}, "
                       f"G={report.G_dB:.3f} dB")
        summary = dict(state.get("summary") or {})
        summary["efficiency"] = {k: float(v) for k, v in report.as_dict().items()}
        peak = (summary.get("pattern") or {}).get("peak_D_co_dB")
        if peak is not None:
            summary["efficiency"]["G_minus_peak_D_co_dB"] = float(report.G_dB - peak)
        return {"efficiency": report, "summary": summary}
