from pathlib import Path

from config.config import RunConfig, load_run_config
from core.errors import ConfigError
from stages.base import BaseStage

COMMANDS = ("reference", "design", "pattern", "sweep")


class IntakeStage(BaseStage):
    """Loads and validates the run configuration before any computation."""
    name = "IntakeStage"
    key = "intake"

    def validate_command(self, command: str, run_cfg: RunConfig, state: dict) -> None:
        if command not in COMMANDS:
            raise ConfigError(f"unknown command '{command}', expected one of {list(COMMANDS)}")
        if command == "design" and run_cfg.null is None:
            raise ConfigError("null: the design command needs a null section")
        if command == "design" and run_cfg.dish.D0 >= run_cfg.dish.D:
            raise ConfigError("dish.D0: the design command needs D0 < D to leave a rim for the reflectarray")
        if command == "sweep" and not run_cfg.sweep.theta_z_deg:
            raise ConfigError("sweep.theta_z_deg: the sweep grid is empty")
        if command == "design" and run_cfg.dyads.source == "pec":
            raise ConfigError("dyads.source: a PEC rim has no switch states to design")

    def run(self, state, logs):
        command = state.get("command", "")
        run_cfg = state.get("run_config")
        if run_cfg is None:
            path = state.get("config_path")
            if not path:
                raise ConfigError("no run configuration given")
            run_cfg = load_run_config(path)
            self.log(logs, f"Loaded config '{run_cfg.name}' from {path}")
        self.validate_command(command, run_cfg, state)
        if state.get("workers"):
            run_cfg = run_cfg.model_copy(update={"workers": int(state["workers"])})
        output_dir = state.get("output_dir") or run_cfg.output.directory
        self.log(logs, f"Command '{command}', config hash {run_cfg.config_hash()[:12]}, output {output_dir}")
        return {"run_config": run_cfg, "output_dir": str(Path(output_dir))}
