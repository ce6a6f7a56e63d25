import math

import pytest

from config import settings
from config.config import load_run_config, parse_run_config
from core.errors import ConfigError


@pytest.mark.parametrize("path", sorted(settings.CONFIGS_DIR.glob("*.yaml")), ids=lambda p: p.stem)
def test_shipped_configs_load(path):
    cfg = load_run_config(path)
    dish = cfg.dish_config()
    assert dish.D0 <= dish.D


def test_design_config_values():
    cfg = load_run_config(settings.CONFIGS_DIR / "design_d017.yaml")
    assert cfg.dyads.source == "ruc_table2"
    null = cfg.null_spec()
    assert null.direction.theta_z == pytest.approx(math.radians(1.75))
    assert cfg.dish_config().F == pytest.approx(7.2)


def test_unknown_keys_are_named(run_data):
    data = run_data(dish={"bogus": 1.0})
    with pytest.raises(ConfigError, match=r"dish\.bogus"):
        parse_run_config(data)


def test_annulus_must_fit_inside_the_dish(run_data):
    with pytest.raises(ConfigError, match="D0"):
        parse_run_config(run_data(dish={"D0": 3.5}))


def test_null_must_be_in_the_forward_hemisphere(run_data):
    with pytest.raises(ConfigError, match=r"null\.theta_z_deg"):
        parse_run_config(run_data(null={"theta_z_deg": 95.0}))


def test_user_table_needs_a_path(run_data):
    with pytest.raises(ConfigError, match="table_path"):
        parse_run_config(run_data(dyads={"source": "user_table"}))


def test_focal_length_defaults_to_forty_percent_of_the_diameter():
    cfg = parse_run_config({"dish": {"D": 10.0, "D0": 9.0}})
    assert cfg.dish_config().F == pytest.approx(4.0)
    assert cfg.null_spec() is None


def test_hash_ignores_workers_and_output(run_data):
    a = parse_run_config(run_data())
    b = parse_run_config(run_data(workers=3, output={"directory": "elsewhere"}))
    c = parse_run_config(run_data(null={"theta_z_deg": 9.0}))
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != c.config_hash()


def test_sweep_points_are_in_grid_order(run_data):
    cfg = parse_run_config(run_data(sweep={"theta_z_deg": [1.0, 2.0], "phi_deg": [0.0, 90.0],
                                           "D0_values": [2.4, 2.6]}))
    points = cfg.sweep_points()
    assert points[:3] == [(2.4, 1.0, 0.0), (2.4, 1.0, 90.0), (2.4, 2.0, 0.0)]
    assert len(points) == 8
    assert points[-1] == (2.6, 2.0, 90.0)


def test_sweep_defaults_to_the_configured_annulus(run_data):
    cfg = parse_run_config(run_data(sweep={"theta_z_deg": [1.0]}))
    assert cfg.sweep_points() == [(2.4, 1.0, 0.0)]


def test_missing_file_and_bad_yaml(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_run_config(tmp_path / "absent.yaml")
    bad = tmp_path / "bad.yaml"
    bad.write_text("dish: [D: 3\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="not valid YAML"):
        load_run_config(bad)


def test_top_level_must_be_a_mapping():
    with pytest.raises(ConfigError):
        parse_run_config(["dish"])
    assert parse_run_config(None).dish.D == 18.0


def test_bare_null_section_name_is_explained(tmp_path):
    path = tmp_path / "bare.yaml"
    path.write_text("dish:\n  D: 3.0\n  D0: 2.4\nnull:\n  theta_z_deg: 8.0\n", encoding="utf-8")
    with pytest.raises(ConfigError, match='write "null"'):
        load_run_config(path)
    path.write_text('dish:\n  D: 3.0\n  D0: 2.4\n"null":\n  theta_z_deg: 8.0\n', encoding="utf-8")
    assert load_run_config(path).null.theta_z_deg == 8.0


@pytest.mark.parametrize("name", ["design_d017", "design_d0165", "ideal_pm_j", "user_table_small"])
def test_shipped_design_configs_carry_a_null(name):
    assert load_run_config(settings.CONFIGS_DIR / f"{name}.yaml").null_spec() is not None
