"""
Run configuration: one YAML file per experiment, validated by pydantic
before anything is computed. Angles are in degrees here and radians
everywhere past this module.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import List, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, ValidationError, model_validator

from config import settings
from core.errors import ConfigError
from geometry.paraboloid import DishConfig, Polarization
from nullsteer.search import NullSpec


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DishSection(_Section):
    D: PositiveFloat = 18.0
    D0: PositiveFloat = 18.0
    F: Optional[PositiveFloat] = None  # 0.4·D when omitted
    frequency_hz: PositiveFloat = settings.DEFAULT_FREQUENCY_HZ

    @model_validator(mode="after")
    def _annulus_inside_dish(self):
        if self.D0 > self.D:
            raise ValueError(f"D0 ({self.D0}) must not exceed D ({self.D})")
        return self

    @property
    def focal_length(self) -> float:
        return self.F if self.F is not None else 0.4 * self.D


class FeedSection(_Section):
    q: PositiveFloat = settings.DEFAULT_FEED_Q
    E0_re: float = 1.0
    E0_im: float = 0.0
    polarization: Literal["x", "y"] = "y"
    vector_model: Literal["normalized", "verbatim"] = "normalized"

    @model_validator(mode="after")
    def _nonzero_amplitude(self):
        if self.E0_re == 0.0 and self.E0_im == 0.0:
            raise ValueError("feed amplitude E0 must be nonzero")
        return self

    @property
    def E0(self) -> complex:
        return complex(self.E0_re, self.E0_im)


class MeshSection(_Section):
    samples_per_wavelength: float = Field(settings.SAMPLES_PER_WAVELENGTH, ge=2.0)
    cell_subgrid: int = Field(settings.CELL_SUBGRID, ge=1)


class DyadSection(_Section):
    source: Literal["pec", "ideal_one_bit", "ruc_table2", "user_table"] = "ruc_table2"
    table_path: Optional[str] = None

    @model_validator(mode="after")
    def _table_for_user_source(self):
        if self.source == "user_table" and not self.table_path:
            raise ValueError("table_path is required when source is user_table")
        return self


class NullSection(_Section):
    theta_z_deg: float = Field(ge=0.0, le=90.0)
    phi_deg: float = 0.0
    states: List[Literal["off", "on"]] = Field(default_factory=lambda: ["off", "on"], min_length=1)


class PatternSection(_Section):
    phi_cut_deg: float = 0.0
    theta_start_deg: float = Field(-8.0, ge=-180.0, le=180.0)
    theta_stop_deg: float = Field(8.0, ge=-180.0, le=180.0)
    step_deg: PositiveFloat = 0.02
    extra_phi_cuts_deg: List[float] = Field(default_factory=list)
    cut_through_null: bool = True
    states_file: Optional[str] = None

    @model_validator(mode="after")
    def _ordered_range(self):
        if self.theta_stop_deg < self.theta_start_deg:
            raise ValueError("theta_stop_deg must not be below theta_start_deg")
        return self


class SweepSection(_Section):
    theta_z_deg: List[float] = Field(default_factory=list)
    phi_deg: List[float] = Field(default_factory=lambda: [0.0])
    D0_values: List[PositiveFloat] = Field(default_factory=list)
    probe_half_width_deg: PositiveFloat = 0.2
    probe_step_deg: PositiveFloat = 0.01


class EfficiencySection(_Section):
    eta_s_eta_t: Optional[float] = Field(None, gt=0.0, le=1.0)


class OutputSection(_Section):
    directory: str = str(settings.DEFAULT_OUTPUT_DIR / "default")
    plots: bool = True


class RunConfig(_Section):
    name: str = "run"
    dish: DishSection = Field(default_factory=DishSection)
    feed: FeedSection = Field(default_factory=FeedSection)
    mesh: MeshSection = Field(default_factory=MeshSection)
    dyads: DyadSection = Field(default_factory=DyadSection)
    null: Optional[NullSection] = None
    pattern: PatternSection = Field(default_factory=PatternSection)
    sweep: SweepSection = Field(default_factory=SweepSection)
    efficiency: EfficiencySection = Field(default_factory=EfficiencySection)
    output: OutputSection = Field(default_factory=OutputSection)
    workers: Optional[int] = Field(None, ge=1)
    selector: str = "serial"

    def dish_config(self, D0: float = None):
        return DishConfig(
            D=self.dish.D,
            D0=self.dish.D0 if D0 is None else D0,
            F=self.dish.focal_length,
            f=self.dish.frequency_hz,
            q=self.feed.q,
            polarization=Polarization(self.feed.polarization),
        )

    def null_spec(self):
        if self.null is None:
            return None
        return NullSpec.from_degrees(self.null.theta_z_deg, self.null.phi_deg, tuple(self.null.states))

    def sweep_points(self):
        """(D0, θ_z°, φ°) in grid order: D0 outermost, then θ_z, then φ."""
        d0s = self.sweep.D0_values or [self.dish.D0]
        return [(d0, t, p) for d0 in d0s for t in self.sweep.theta_z_deg for p in self.sweep.phi_deg]

    def config_hash(self) -> str:
        """sha256 of the physics and grid settings; workers and output location do not count."""
        payload = json.dumps(self.model_dump(mode="json", exclude={"workers", "output"}),
                             sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    @property
    def phi_cut(self) -> float:
        return math.radians(self.pattern.phi_cut_deg)


def _format_validation_error(err: ValidationError) -> str:
    lines = []
    for e in err.errors():
        where = ".".join(str(x) for x in e["loc"]) or "<root>"
        lines.append(f"{where}: {e['msg']}")
    return "invalid run configuration: " + "; ".join(lines)


def parse_run_config(data: dict) -> RunConfig:
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("run configuration must be a mapping of sections")
    bad = [k for k in data if not isinstance(k, str)]
    if bad:
        hint = " (YAML reads a bare null: key as None; write \"null\": instead)" if None in bad else ""
        raise ConfigError(f"section names must be strings, got {bad}{hint}")
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(_format_validation_error(e)) from e


def load_run_config(path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ConfigError(f"config file {path.name} is not valid YAML: {e}") from e
    return parse_run_config(data)
