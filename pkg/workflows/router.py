from typing import List

# Next stage after each stage, per command. A stage that is not listed for
# a command ends the run.
PIPELINES = {
    "reference": ["intake", "geometry", "assemble", "pattern", "efficiency", "report"],
    "pattern": ["intake", "geometry", "assemble", "pattern", "efficiency", "report"],
    "design": ["intake", "geometry", "design", "pattern", "efficiency", "report"],
    "sweep": ["intake", "geometry", "sweep", "report"],
}


def stage_router(state: dict) -> List[str]:
    # Any stage error finishes the workflow
    if state.get("error"):
        return ["finish"]
    pipeline = PIPELINES.get(state.get("command", ""), [])
    stage = state.get("stage", "")
    if stage not in pipeline or pipeline.index(stage) == len(pipeline) - 1:
        return ["finish"]
    return [pipeline[pipeline.index(stage) + 1]]
