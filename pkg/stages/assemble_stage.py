from nullsteer.search import apply_states, uniform_config
from results.csv_store import read_states
from stages.base import BaseStage


class AssembleStage(BaseStage):
    """Picks the radiating system for the reference and pattern commands.

    reference: the solid PEC dish of diameter D.
    pattern: reflector plus reflectarray with a saved switch map, or with
    every cell OFF when no map is given.
    """
    name = "AssembleStage"
    key = "assemble"

    def run(self, state, logs):
        run_cfg = state["run_config"]
        model = state["model"]
        if state["command"] == "reference":
            self.log(logs, "Using the solid PEC reference dish")
            return {"system": state["reference"]}
        if not model.cells:
            self.log(logs, "No reflectarray cells; pattern of the solid reflector")
            return {"system": model.reflector_system}
        states_path = state.get("states_path") or run_cfg.pattern.states_file
        if states_path:
            config = read_states(states_path, model.cells)
            self.log(logs, f"Replaying switch map {states_path}: {config.count('on')} of {len(config)} cells on")
        else:
            config = uniform_config(model.cells)
            self.log(logs, f"No switch map given; all {len(config)} cells off")
        dyads = apply_states(model.cells, config, model.source, model.cfg.f)
        return {"switch_config": config, "cell_dyads": dyads, "system": model.ims_system(dyads)}
