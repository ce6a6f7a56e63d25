import math

from farfield.patterns import directivity
from nullsteer.design import design_null
from nullsteer.search import clustering_report, verify_local_optimality
from stages.base import BaseStage


class DesignStage(BaseStage):
    """Serial search for the commanded null and re-evaluation of the designed IMS."""
    name = "DesignStage"
    key = "design"

    def run(self, state, logs):
        run_cfg = state["run_config"]
        model = state["model"]
        null = run_cfg.null_spec()
        self.log(logs, f"Null at theta_z={math.degrees(null.direction.theta_z):.3f} deg, "
                       f"phi={math.degrees(null.direction.phi):.3f} deg over {len(model.cells)} cells, "
                       f"selector '{run_cfg.selector}'")
        outcome = design_null(model, null, state["reference"], run_cfg.selector, run_cfg.workers)
        cfg = outcome.config
        self.log(logs, f"|T0|={abs(cfg.T0):.6e} V -> residual |T_N|={abs(cfg.residual):.6e} V; "
                       f"{cfg.count('on')} cells on, {cfg.count('off')} off")
        violations = verify_local_optimality(outcome.contributions, null, cfg)
        if violations:
            self.log(logs, f"[WARNING] steps not locally optimal: {violations[:10]}")
        rel = abs(outcome.E_co_null - cfg.residual) / max(abs(cfg.residual), abs(cfg.T0), 1e-300)
        self.log(logs, f"Re-evaluated null field differs from the search residual by {rel:.2e} (relative)")
        self.log(logs, f"Null depth {outcome.null_depth_dB:.2f} dB "
                       f"(reference {outcome.D_null_reference_dB:.2f} dBi -> IMS {outcome.D_null_dB:.2f} dBi)")
        summary = dict(state.get("summary") or {})
        summary["design"] = {
            "null_theta_z_deg": math.degrees(null.direction.theta_z),
            "null_phi_deg": math.degrees(null.direction.phi),
            "selector": cfg.selector,
            "cells": len(cfg),
            "rings": model.n_rings,
            "cells_on": cfg.count("on"),
            "T0_abs": abs(cfg.T0),
            "residual_abs": abs(cfg.residual),
            "residual_reevaluated_abs": abs(outcome.E_co_null),
            "residual_mismatch_rel": rel,
            "locally_optimal": not violations,
            "null_depth_dB": outcome.null_depth_dB,
            "D_null_dB": outcome.D_null_dB,
            "D_null_reference_dB": outcome.D_null_reference_dB,
            "E_cr_null_abs": abs(outcome.E_cr_null),
            "D_cr_null_dB": _db_or_none(outcome.E_cr_null, model.P_rad),
            "residual_history": [float(h) for h in cfg.history],
            "clustering": clustering_report(cfg),
        }
        if model.source.kind.value == "ideal_one_bit":
            summary["design"]["note"] = (
                "ideal +/-j dyads stand in for a fixed printed reflectarray; "
                "element-size synthesis for such a design is not modelled")
        return {
            "design": outcome,
            "switch_config": cfg,
            "cell_dyads": outcome.cell_dyads,
            "system": outcome.system,
            "summary": summary,
        }


def _db_or_none(E, P_rad):
    value = float(directivity(E, P_rad))
    return value if math.isfinite(value) else None
