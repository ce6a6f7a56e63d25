import cmath
import math

import numpy as np
import pytest

from config import settings
from core.errors import ContractViolation, DomainError, DyadLookupError
from feed.feed_model import FeedConfig, incident_on_mesh
from geometry.paraboloid import DishConfig, mesh_reflector
from scattering.currents import (
    dyad_coefficients,
    pec_current,
    surface_current,
    unit_dyad_currents,
)
from scattering.dyads import (
    PEC_DYAD,
    RUC_DATASHEET,
    TABLE2_DYADS,
    DyadKind,
    DyadSource,
    ReflectionDyad,
    SwitchState,
    dyad_matrices,
    dyad_table_frame,
    ideal_source,
    load_user_table,
    make_source,
    table2_source,
)

SMALL = DishConfig(D=3.0, D0=3.0, F=1.2)
F_HZ = settings.DEFAULT_FREQUENCY_HZ


@pytest.fixture(scope="module")
def lit_mesh():
    mesh = mesh_reflector(SMALL, 4, theta_max=SMALL.theta0)
    feed = FeedConfig.for_dish(SMALL)
    return mesh, incident_on_mesh(feed, mesh)


def _polar(z):
    return abs(z), math.degrees(cmath.phase(z))


def test_table2_on_state():
    d = table2_source().lookup(SwitchState.ON, math.radians(31.25), F_HZ)
    for value, (mag, phase) in ((d.r_tt, (0.97, 93.73)), (d.r_pp, (0.97, 100.65)),
                                (d.r_tp, (0.185, -146.18)), (d.r_pt, (0.187, 160.74))):
        assert _polar(value) == pytest.approx((mag, phase), abs=1e-9)


def test_table2_off_state_co_polar_terms():
    d = table2_source().lookup("off", math.radians(31.25), F_HZ)
    assert _polar(d.r_tt) == pytest.approx((0.95, -127.12), abs=1e-9)
    assert _polar(d.r_pp) == pytest.approx((0.95, -123.54), abs=1e-9)


def test_table2_worst_co_polar_loss():
    assert TABLE2_DYADS[SwitchState.OFF].co_pol_loss_db() == pytest.approx(-0.446, abs=1e-3)
    assert all(d.is_passive() for d in TABLE2_DYADS.values())


def test_table2_lookup_tolerates_small_incidence_spread():
    source = table2_source()
    assert source.lookup("on", math.radians(32.5), F_HZ) == TABLE2_DYADS[SwitchState.ON]
    with pytest.raises(DyadLookupError, match="theta_inc"):
        source.lookup("on", math.radians(35.0), F_HZ)
    with pytest.raises(DyadLookupError):
        source.lookup("on", math.radians(31.25), 2.0e9)


def test_pec_and_ideal_sources_ignore_the_key():
    pec = make_source(DyadKind.PEC)
    np.testing.assert_array_equal(pec.lookup("on", 1.0, 9e9).matrix, -np.eye(2))
    ideal = ideal_source()
    np.testing.assert_array_equal(ideal.lookup("on", 0.2, 1.0).matrix, 1j * np.eye(2))
    np.testing.assert_array_equal(ideal.lookup("off", 0.2, 1.0).matrix, -1j * np.eye(2))
    assert pec.states == (SwitchState.OFF,)
    assert ideal.states == (SwitchState.OFF, SwitchState.ON)


def test_user_table_nearest_angle_lookup():
    source = load_user_table(settings.DYADS_DIR / "example_dyads.csv")
    assert source.kind is DyadKind.USER_TABLE
    d = source.lookup("on", math.radians(31.2), F_HZ)
    assert abs(d.r_tt) == pytest.approx(0.965, abs=1e-12)
    with pytest.raises(DyadLookupError):
        source.lookup("on", math.radians(70.0), F_HZ)


def test_user_table_needs_every_column(tmp_path):
    path = tmp_path / "broken.csv"
    path.write_text("state,frequency_hz,theta_inc_deg\non,1.5e9,30\n", encoding="utf-8")
    with pytest.raises(DomainError, match="lacks columns"):
        load_user_table(path)


def test_active_dyads_are_rejected():
    with pytest.raises(DomainError, match="not passive"):
        DyadSource(DyadKind.USER_TABLE, {(SwitchState.ON, F_HZ, 30.0): ReflectionDyad.scalar(1.2)})


def test_pec_dyad_reproduces_the_textbook_current(lit_mesh):
    mesh, E_i = lit_mesh
    J = surface_current(mesh, PEC_DYAD, E_i)
    J_ref = pec_current(mesh, E_i)
    scale = np.linalg.norm(J_ref, axis=-1)
    assert np.all(np.linalg.norm(J - J_ref, axis=-1) <= 1e-12 * scale)


def test_zero_dyad_gives_no_current(lit_mesh):
    mesh, E_i = lit_mesh
    J = surface_current(mesh, ReflectionDyad.scalar(0.0), E_i)
    assert np.all(J == 0)


def test_vertex_current_direction_and_sign():
    cfg = DishConfig(D=18.0, D0=18.0, F=7.2)
    mesh = mesh_reflector(cfg, 4, theta_max=1e-12)
    sample = mesh[0]
    amp = cmath.exp(-1j * cfg.k * 7.2) / 7.2
    E_i = np.array([0.0, 1.0, 0.0]) * amp
    J = surface_current(sample, PEC_DYAD, E_i)
    expected = 2.0 * amp / settings.ETA0 * np.array([0.0, 1.0, 0.0])
    np.testing.assert_allclose(J, expected, rtol=0, atol=1e-9 * abs(expected[1]))


def test_non_transverse_incident_field_is_rejected(lit_mesh):
    mesh, _ = lit_mesh
    with pytest.raises(ContractViolation):
        surface_current(mesh, PEC_DYAD, mesh.k_i.astype(complex))


def test_unit_dyad_currents_superpose_to_any_dyad(lit_mesh):
    mesh, E_i = lit_mesh
    basis = unit_dyad_currents(mesh, E_i)
    for dyad in (*TABLE2_DYADS.values(), PEC_DYAD):
        combined = np.einsum("k,nkc->nc", dyad_coefficients(dyad), basis)
        np.testing.assert_allclose(combined, surface_current(mesh, dyad, E_i), rtol=1e-12, atol=1e-16)


def test_per_sample_dyads_match_a_uniform_dyad(lit_mesh):
    mesh, E_i = lit_mesh
    dyad = TABLE2_DYADS[SwitchState.ON]
    stacked = dyad_matrices([dyad] * len(mesh))
    np.testing.assert_array_equal(surface_current(mesh, stacked, E_i), surface_current(mesh, dyad, E_i))


def test_builtin_table_exports_as_a_user_table(tmp_path):
    path = tmp_path / "table2.csv"
    dyad_table_frame(table2_source()).to_csv(path, index=False)
    source = load_user_table(path)
    for state, dyad in TABLE2_DYADS.items():
        np.testing.assert_allclose(source.lookup(state, math.radians(31.25), F_HZ).matrix, dyad.matrix, atol=1e-12)


def test_unit_cell_datasheet():
    assert RUC_DATASHEET.describe().startswith("51x51 mm cell")
    assert RUC_DATASHEET.diode_off["C_T_pF"] == 0.23
