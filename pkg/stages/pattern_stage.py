import math

from farfield.patterns import pattern_cut, sidelobes
from stages.base import BaseStage


def _same_plane(a: float, b: float) -> bool:
    d = (a - b) % 180.0
    return math.isclose(d, 0.0, abs_tol=1e-9) or math.isclose(d, 180.0, abs_tol=1e-9)


class PatternStage(BaseStage):
    """Co/cross-polar cuts of the selected system and, for a modified dish, of the reference."""
    name = "PatternStage"
    key = "pattern"

    def cut_planes(self, run_cfg):
        """φ_cut first, then the extra planes, then the plane through the null; repeats of a plane are skipped."""
        candidates = list(run_cfg.pattern.extra_phi_cuts_deg)
        if run_cfg.null is not None and run_cfg.pattern.cut_through_null:
            candidates.append(run_cfg.null.phi_deg)
        planes = [run_cfg.pattern.phi_cut_deg]
        for phi in candidates:
            if not any(_same_plane(phi, p) for p in planes):
                planes.append(phi)
        return planes

    def run(self, state, logs):
        run_cfg = state["run_config"]
        system = state["system"]
        p = run_cfg.pattern
        probes = [run_cfg.null_spec().direction] if run_cfg.null is not None else []
        systems = {"ims" if state["command"] != "reference" else "reference": system}
        if state["command"] != "reference" and system is not state["reference"]:
            systems["reference"] = state["reference"]
        planes = self.cut_planes(run_cfg)
        patterns = {}
        for phi_deg in planes:
            for label, sys_ in systems.items():
                cut = pattern_cut(sys_, math.radians(phi_deg), math.radians(p.theta_start_deg),
                                  math.radians(p.theta_stop_deg), math.radians(p.step_deg),
                                  probes=probes, workers=run_cfg.workers)
                key = f"{label}_phi{phi_deg:g}"
                patterns[key] = cut
                self.log(logs, f"Cut {key}: {len(cut)} angles, peak D_co {cut.summary['peak_D_co_dB']:.3f} dBi "
                               f"at theta_z={cut.summary['peak_theta_z_deg']:.3f} deg")
        main = patterns[next(iter(patterns))]
        summary = dict(state.get("summary") or {})
        summary["pattern"] = {
            "cuts": {k: {kk: float(v) for kk, v in r.summary.items()} for k, r in patterns.items()},
            "peak_D_co_dB": float(main.summary["peak_D_co_dB"]),
            "sidelobes": sidelobes(main)[:4],
            "sidelobes_by_cut": {k: sidelobes(r)[:4] for k, r in patterns.items()},
        }
        if "reference" in systems and len(systems) > 1:
            ref = patterns[f"reference_phi{planes[0]:g}"]
            summary["pattern"]["reference_peak_D_co_dB"] = float(ref.summary["peak_D_co_dB"])
            summary["pattern"]["delta_D_co_dB"] = float(main.summary["peak_D_co_dB"] - ref.summary["peak_D_co_dB"])
        return {"patterns": patterns, "summary": summary}
