import argparse
import sys
import warnings
from pathlib import Path

from config.config import load_run_config
from config.registry import STAGE_REGISTRY
from core.errors import ConfigError, RimNullError
from geometry.tessellation import tessellate_annulus
from results import csv_store
from workflows.graph import build_workflow

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2

# --- Stage node wrappers for the workflow ---

def make_stages():
    """
    Instantiate every registered stage and wrap it as a node function.
    Returns a dict of node_name: callable(state) -> dict
    """
    def node_wrapper(stage):
        def node_fn(state):
            return stage.process(state)
        return node_fn
    return {name: node_wrapper(cls()) for name, cls in STAGE_REGISTRY.items()}


def build_rimnullx_workflow():
    return build_workflow(make_stages())

# --- Commands ---

def run_command(command: str, config_path=None, run_config=None, output_dir=None,
                states_path=None, workers=None) -> dict:
    """Run one pipeline command through the workflow graph and return the final state."""
    workflow = build_rimnullx_workflow()
    state = {"command": command, "logs": []}
    if config_path is not None:
        state["config_path"] = str(config_path)
    if run_config is not None:
        state["run_config"] = run_config
    if output_dir is not None:
        state["output_dir"] = str(output_dir)
    if states_path is not None:
        state["states_path"] = str(states_path)
    if workers is not None:
        state["workers"] = int(workers)
    return workflow.invoke(state)


def export_states(source, out_path) -> Path:
    """Copy a design's switch map (run directory or states CSV) to a standalone file."""
    source = Path(source)
    if source.is_dir():
        source = source / "switch_states.csv"
    df, meta = csv_store.read_table(source)
    meta["exported_from"] = str(source)
    return csv_store.write_table(out_path, df, meta)


def import_states(states_file, config_path, output_dir=None) -> Path:
    """Check a switch map against the config's tessellation and store it for replay."""
    run_cfg = load_run_config(config_path)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        cells = tessellate_annulus(run_cfg.dish_config(), run_cfg.mesh.cell_subgrid)
    config = csv_store.read_states(states_file, cells)
    out = Path(output_dir or run_cfg.output.directory) / "switch_states.csv"
    meta = csv_store.run_metadata(run_cfg, table="switch_states", imported_from=str(states_file))
    return csv_store.write_states_csv(out, cells, config, meta)

# --- CLI ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rimnullx",
        description="Paraboloid + rim reflectarray simulator with serial-search null steering.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_args(p):
        p.add_argument("config", help="YAML run configuration")
        p.add_argument("--out", help="output directory (overrides output.directory)")
        p.add_argument("--workers", type=int, help="worker threads (default: $RIMNULLX_WORKERS or 1)")
        p.add_argument("--quiet", action="store_true", help="do not print the run log")

    add_run_args(sub.add_parser("reference", help="pattern, directivity and e_r of the solid PEC dish"))
    add_run_args(sub.add_parser("design", help="serial-search switch states for the configured null"))
    pattern = sub.add_parser("pattern", help="pattern of the IMS with a saved switch map")
    add_run_args(pattern)
    pattern.add_argument("--states", help="switch map CSV to replay (overrides pattern.states_file)")
    add_run_args(sub.add_parser("sweep", help="null-direction / D0 sweep, resumable"))

    states = sub.add_parser("states", help="export or import switch maps")
    states_sub = states.add_subparsers(dest="action", required=True)
    exp = states_sub.add_parser("export", help="copy a design's switch map to a standalone CSV")
    exp.add_argument("source", help="design output directory or switch_states.csv")
    exp.add_argument("out", help="destination CSV")
    imp = states_sub.add_parser("import", help="validate a switch map against a config and store it")
    imp.add_argument("states_file")
    imp.add_argument("config")
    imp.add_argument("--out", help="output directory (overrides output.directory)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "states":
            if args.action == "export":
                path = export_states(args.source, args.out)
            else:
                path = import_states(args.states_file, args.config, args.out)
            print(f"[rimnullx] wrote {path}")
            return EXIT_OK
        result = run_command(args.command, config_path=args.config, output_dir=args.out,
                             states_path=getattr(args, "states", None), workers=args.workers)
    except ConfigError as e:
        print(f"[rimnullx][ERROR] {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (RimNullError, ArithmeticError, ValueError) as e:
        print(f"[rimnullx][ERROR] {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERIC

    if not args.quiet:
        print("\n".join(result.get("logs", [])))
    if result.get("error"):
        print(f"[rimnullx][ERROR] {result['error']}", file=sys.stderr)
        return EXIT_CONFIG if result.get("error_kind") == "config" else EXIT_NUMERIC
    summary = (result.get("outputs") or {}).get("summary")
    if summary:
        print(f"[rimnullx] summary: {summary}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
