from typing import Any, Dict, List, TypedDict
from typing_extensions import Annotated
import operator


# The workflow state passed between stages. Heavy objects (meshes, radiating
# systems) travel by reference and are never mutated after their stage.
class RimNullState(TypedDict, total=False):
    command: str                            # reference | design | pattern | sweep
    config_path: str                        # YAML run file (optional when run_config is given)
    run_config: Any                         # validated RunConfig
    output_dir: str                         # overrides output.directory
    states_path: str                        # switch map to replay (pattern command)
    workers: int                            # worker-count override
    stage: str                              # name of the stage that produced this update
    source: Any                             # DyadSource
    model: Any                              # DishModel
    reference_mesh: Any                     # SurfaceMesh of the full PEC dish
    reference: Any                          # RadiatingSystem of the full PEC dish
    design: Any                             # DesignOutcome (design command)
    switch_config: Any                      # SwitchConfig driving the reflectarray
    cell_dyads: Any                         # (Ncell, 2, 2) dyads of the applied states
    system: Any                             # RadiatingSystem whose pattern is reported
    patterns: Dict[str, Any]                # label -> FarFieldResult
    efficiency: Any                         # EfficiencyReport
    sweep: Any                              # SweepGrid
    summary: Dict[str, Any]                 # run summary written to summary.yaml (set/replace)
    outputs: Dict[str, str]                 # artifact name -> file path
    error: str                              # set by the first failing stage
    error_kind: str                         # "config" or "numeric"
    logs: Annotated[List[str], operator.add]  # stage logs (append/add)
