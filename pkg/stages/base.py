from abc import ABC, abstractmethod
from datetime import datetime
from typing import Dict, List

from core.errors import ConfigError


class BaseStage(ABC):
    """
    Abstract base class for all pipeline stages in RimNullX.
    Every stage implements run(state, logs) -> dict; process() wraps it with
    timestamped logging and turns exceptions into an error entry in the state.
    """
    name = "BaseStage"   # label used in log lines
    key = "base"         # node name in the workflow graph

    def stamp(self) -> str:
        return datetime.now().isoformat(timespec='seconds')

    def log(self, logs: List[str], message: str) -> None:
        logs.append(f"[{self.stamp()}] [{self.name}] {message}")

    @abstractmethod
    def run(self, state: Dict, logs: List[str]) -> Dict:
        """
        Args:
            state (dict): The workflow state so far.
            logs (list): Log lines to extend.
        Returns:
            dict: State updates produced by the stage.
        """
        pass

    def process(self, state: Dict) -> Dict:
        logs: List[str] = []
        try:
            update = self.run(state, logs)
        except Exception as e:
            kind = "config" if isinstance(e, ConfigError) else "numeric"
            logs.append(f"[{self.stamp()}] [{self.name}][ERROR] {type(e).__name__}: {e}")
            return {"stage": self.key, "error": f"{type(e).__name__}: {e}", "error_kind": kind, "logs": logs}
        update.setdefault("stage", self.key)
        update["logs"] = logs
        return update
