import math

import numpy as np
import pandas as pd
import pytest

from core.errors import ContractViolation, DomainError
from farfield.patterns import pattern_cut
from nullsteer.search import SwitchConfig
from results import csv_store, plots
from scattering.dyads import SwitchState


def _alternating(cells):
    keys = tuple((c.ring, c.index_in_ring) for c in cells)
    states = tuple(SwitchState.ON if i % 3 == 0 else SwitchState.OFF for i in range(len(cells)))
    return SwitchConfig(keys, states, 0.125 - 3.5e-7j, selector="serial")


def test_table_keeps_its_header(tmp_path):
    path = csv_store.write_table(tmp_path / "t.csv", pd.DataFrame({"a": [1, 2], "b": [0.5, -1.0]}),
                                 {"config_hash": "abc", "angles": "degrees"})
    df, meta = csv_store.read_table(path)
    assert meta == {"config_hash": "abc", "angles": "degrees"}
    assert df["b"].tolist() == [0.5, -1.0]
    assert not (tmp_path / "t.csv.tmp").exists()


def test_appended_rows_follow_the_header(tmp_path):
    path = csv_store.start_table(tmp_path / "s.csv", ["x", "y"], {"table": "sweep"})
    csv_store.append_rows(path, [{"x": 1, "y": "a"}], ["x", "y"])
    csv_store.append_rows(path, [{"x": 2, "y": "b"}], ["x", "y"])
    df, meta = csv_store.read_table(path)
    assert df["x"].tolist() == [1, 2]
    assert meta["table"] == "sweep"


def test_missing_result_file(tmp_path):
    with pytest.raises(DomainError):
        csv_store.read_table(tmp_path / "nothing.csv")


def test_switch_states_survive_the_file(table2_model, tmp_path):
    cells = table2_model.cells
    config = _alternating(cells)
    path = csv_store.write_states_csv(tmp_path / "states.csv", cells, config, {"config_hash": "x"})
    back = csv_store.read_states(path, cells)
    assert back.keys == config.keys
    assert back.states == config.states
    assert back.residual == config.residual
    assert back.selector == "serial"


def test_states_file_must_match_the_tessellation(table2_model, ideal_model, tmp_path):
    path = csv_store.write_states_csv(tmp_path / "states.csv", table2_model.cells,
                                      _alternating(table2_model.cells), {})
    with pytest.raises(ContractViolation, match="cells"):
        csv_store.read_states(path, ideal_model.cells)


def test_unknown_state_value_is_rejected(table2_model, tmp_path):
    cells = table2_model.cells[:2]
    df = csv_store.states_frame(cells, _alternating(cells))
    df.loc[1, "state"] = "half"
    path = csv_store.write_table(tmp_path / "states.csv", df, {})
    with pytest.raises(ContractViolation):
        csv_store.read_states(path, cells)


def test_states_frame_columns(table2_model):
    df = csv_store.states_frame(table2_model.cells, _alternating(table2_model.cells))
    assert list(df.columns) == csv_store.STATES_COLUMNS
    assert set(df["state"]) == {"on", "off"}
    assert df["theta_p_deg"].between(0.0, 90.0).all()


def test_figures_are_drawn_from_the_csv_files(small_reference, table2_model, tmp_path):
    _, system = small_reference
    cut = pattern_cut(system, 0.0, math.radians(-5.0), math.radians(5.0), math.radians(0.5))
    pattern = csv_store.write_pattern_csv(tmp_path / "cut.csv", cut, {"config_name": "small"})
    df, _ = csv_store.read_table(pattern)
    np.testing.assert_allclose(df["D_co_dB"], cut.D_co)
    svg = plots.plot_cut_svg(pattern, tmp_path / "cut.svg")
    assert svg.read_text(encoding="utf-8").lstrip().startswith("<?xml")

    states = csv_store.write_states_csv(tmp_path / "states.csv", table2_model.cells,
                                        _alternating(table2_model.cells), {})
    assert plots.plot_state_map_svg(states, tmp_path / "map.svg").stat().st_size > 0


def test_summary_and_log_files(tmp_path):
    summary = csv_store.write_summary(tmp_path / "run" / "summary.yaml", {"G_dB": 48.2, "rings": 6})
    assert "G_dB: 48.2" in summary.read_text(encoding="utf-8")
    log = csv_store.write_log(tmp_path / "run" / "run.log", ["one", "two"])
    assert log.read_text(encoding="utf-8") == "one\ntwo\n"
