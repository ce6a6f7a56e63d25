import pytest
import yaml

from config.config import parse_run_config
from main import EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, main, run_command
from results import csv_store
from stages.pattern_stage import PatternStage
from tests.conftest import BASE_RUN

PROBE = "D_co_at_8.00_0.0_dB"


def _write_config(path, data):
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return path


@pytest.fixture(scope="module")
def design_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("design")
    result = run_command("design", run_config=parse_run_config(BASE_RUN), output_dir=out)
    return out, result


def test_reference_run(run_data, tmp_path):
    result = run_command("reference", run_config=parse_run_config(run_data()), output_dir=tmp_path)
    assert not result.get("error"), result.get("error")
    summary = result["summary"]
    assert summary["efficiency"]["e_r"] == 1.0
    assert abs(summary["efficiency"]["G_minus_peak_D_co_dB"]) < 1.0
    assert summary["pattern"]["cuts"]["reference_phi0"]["peak_theta_z_deg"] == pytest.approx(0.0)
    assert (tmp_path / "summary.yaml").is_file()
    assert (tmp_path / "pattern_reference_phi0.csv").is_file()
    assert any("[GeometryStage]" in line for line in result["logs"])


def test_extra_cut_planes_report_their_own_sidelobes(run_data, tmp_path):
    cfg = parse_run_config(run_data(pattern={"extra_phi_cuts_deg": [30.0, 180.0]}))
    assert PatternStage().cut_planes(cfg) == [0.0, 30.0]
    result = run_command("reference", run_config=cfg, output_dir=tmp_path)
    assert not result.get("error"), result.get("error")
    pattern = result["summary"]["pattern"]
    assert set(pattern["sidelobes_by_cut"]) == {"reference_phi0", "reference_phi30"}
    assert pattern["sidelobes_by_cut"]["reference_phi0"] == pattern["sidelobes"]
    assert pattern["sidelobes_by_cut"]["reference_phi30"]
    assert (tmp_path / "pattern_reference_phi30.csv").is_file()


def test_design_run_writes_a_switch_map(design_run):
    out, result = design_run
    assert not result.get("error"), result.get("error")
    design = result["summary"]["design"]
    assert design["null_depth_dB"] > 15.0
    assert design["locally_optimal"]
    assert design["residual_mismatch_rel"] < 1e-9
    assert 0.0 < result["summary"]["efficiency"]["e_r"] <= 1.0
    _, meta = csv_store.read_table(out / "switch_states.csv")
    assert meta["table"] == "switch_states"
    assert "ims_phi0" in result["patterns"] and "reference_phi0" in result["patterns"]


def test_replayed_switch_map_reproduces_the_null(design_run, run_data, tmp_path):
    out, designed = design_run
    result = run_command("pattern", run_config=parse_run_config(run_data()), output_dir=tmp_path,
                         states_path=out / "switch_states.csv")
    assert not result.get("error"), result.get("error")
    probe = result["summary"]["pattern"]["cuts"]["ims_phi0"][PROBE]
    assert probe == pytest.approx(designed["summary"]["design"]["D_null_dB"], abs=1e-9)


def test_design_without_a_null_is_a_config_error(run_data, tmp_path):
    result = run_command("design", run_config=parse_run_config(run_data(null=None)), output_dir=tmp_path)
    assert result["error_kind"] == "config"
    assert result["stage"] == "intake"


def test_exit_codes(run_data, tmp_path):
    bad = _write_config(tmp_path / "bad.yaml", run_data(dish={"D0": 4.0}))
    assert main(["design", str(bad), "--quiet"]) == EXIT_CONFIG
    assert main(["reference", str(tmp_path / "missing.yaml")]) == EXIT_CONFIG

    tabulated = _write_config(tmp_path / "table.yaml", run_data(dyads={"source": "ruc_table2"}))
    assert main(["design", str(tabulated), "--out", str(tmp_path / "t"), "--quiet"]) == EXIT_NUMERIC


def test_states_export_and_import(design_run, run_data, tmp_path):
    out, _ = design_run
    exported = tmp_path / "map.csv"
    assert main(["states", "export", str(out), str(exported)]) == EXIT_OK
    assert csv_store.read_header(exported)["exported_from"].endswith("switch_states.csv")

    config = _write_config(tmp_path / "run.yaml", run_data())
    assert main(["states", "import", str(exported), str(config), "--out", str(tmp_path / "imported")]) == EXIT_OK
    imported, _ = csv_store.read_table(tmp_path / "imported" / "switch_states.csv")
    original, _ = csv_store.read_table(out / "switch_states.csv")
    assert imported["state"].tolist() == original["state"].tolist()

    other = _write_config(tmp_path / "other.yaml", run_data(dish={"D0": 2.8}))
    assert main(["states", "import", str(exported), str(other), "--out", str(tmp_path / "x")]) == EXIT_NUMERIC
