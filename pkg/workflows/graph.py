from langgraph.graph import StateGraph, END
from workflows.state import RimNullState
from workflows.router import PIPELINES, stage_router

# Build the run graph for RimNullX.
# To add a stage:
#   1. Register its class in config.registry.STAGE_REGISTRY
#   2. Put its name into the PIPELINES entry of every command that uses it
#   3. Pass its node function to build_workflow


def build_workflow(stage_nodes: dict):
    graph = StateGraph(RimNullState)
    for name, node_fn in stage_nodes.items():
        graph.add_node(name, node_fn)
    graph.set_entry_point("intake")

    used = {name for pipeline in PIPELINES.values() for name in pipeline}
    missing = sorted(used - set(stage_nodes))
    if missing:
        raise ValueError(f"[build_workflow] No node supplied for stages: {missing}")

    # Every stage routes conditionally: onward along its command's pipeline, or finish
    for name in stage_nodes:
        if name == "report":
            continue
        mapping = {target: target for target in stage_nodes if target != "intake"}
        mapping["finish"] = END
        graph.add_conditional_edges(name, stage_router, mapping)
    graph.add_edge("report", END)
    return graph.compile()
