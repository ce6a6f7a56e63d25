"""
Radiation efficiency, aperture efficiency and gain.

The spillover×taper product is not computed from the pattern; it is taken
as a constant (0.82 for the solid dish, 0.731 once the rim is reallocated
to the reflectarray).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Tuple, Union

import numpy as np

from config import settings
from core.errors import DomainError
from core.numerics import power_db
from feed.feed_model import FeedConfig, incident_on_mesh
from geometry.paraboloid import DishConfig, SurfaceMesh
from scattering.currents import decompose
from scattering.dyads import ReflectionDyad

DyadField = Union[ReflectionDyad, np.ndarray]


@dataclass(frozen=True)
class EfficiencyReport:
    e_r: float
    eta_s_eta_t: float
    eta_ap: float
    G_dB: float
    A: float
    lambda0: float

    def as_dict(self) -> dict:
        return asdict(self)


def _reflected_power(mesh: SurfaceMesh, dyads: DyadField, E_i) -> Tuple[float, float]:
    a_tm, a_te = decompose(mesh, E_i)
    if isinstance(dyads, ReflectionDyad):
        R = np.broadcast_to(dyads.matrix, (len(mesh), 2, 2))
    else:
        R = np.asarray(dyads, dtype=complex)
    r_tm = R[:, 0, 0] * a_tm + R[:, 0, 1] * a_te
    r_te = R[:, 1, 0] * a_tm + R[:, 1, 1] * a_te
    before = np.sum(mesh.dS * (np.abs(a_tm) ** 2 + np.abs(a_te) ** 2))
    after = np.sum(mesh.dS * (np.abs(r_tm) ** 2 + np.abs(r_te) ** 2))
    return float(after), float(before)


def radiation_efficiency(parts: Iterable[Tuple[SurfaceMesh, DyadField]], feed: FeedConfig) -> float:
    """Area-weighted Σ dS|R·Eⁱ|² / Σ dS|Eⁱ|² over every (mesh, dyads) part.

    ``dyads`` is one ReflectionDyad for the whole part or an (N, 2, 2) array.
    """
    num = den = 0.0
    for mesh, dyads in parts:
        if len(mesh) == 0:
            continue
        after, before = _reflected_power(mesh, dyads, incident_on_mesh(feed, mesh))
        num += after
        den += before
    if den <= 0.0:
        raise DomainError("no incident power on the surface; radiation efficiency undefined")
    return num / den


def aperture_area(D: float) -> float:
    return math.pi * (0.5 * D) ** 2


def gain(e_r: float, eta_s_eta_t: float, A: float, lambda0: float) -> float:
    """10·log10(e_r·η_sη_t·4πA/λ²); e_r = 0 gives -inf."""
    if e_r < 0.0 or eta_s_eta_t <= 0.0 or A <= 0.0 or lambda0 <= 0.0:
        raise DomainError(
            f"gain needs e_r >= 0 and positive eta_s_eta_t, A, lambda0 (got {e_r}, {eta_s_eta_t}, {A}, {lambda0})")
    return float(power_db(e_r * eta_s_eta_t * 4.0 * math.pi * A / lambda0 ** 2))


def efficiency_report(e_r: float, cfg: DishConfig, eta_s_eta_t: float = None,
                      rim_reallocated: bool = None) -> EfficiencyReport:
    if rim_reallocated is None:
        rim_reallocated = cfg.D0 < cfg.D
    if eta_s_eta_t is None:
        eta_s_eta_t = settings.ETA_ST_REALLOCATED_RIM if rim_reallocated else settings.ETA_ST_FULL_DISH
    A = aperture_area(cfg.D)
    return EfficiencyReport(
        e_r=e_r,
        eta_s_eta_t=eta_s_eta_t,
        eta_ap=e_r * eta_s_eta_t,
        G_dB=gain(e_r, eta_s_eta_t, A, cfg.lambda0),
        A=A,
        lambda0=cfg.lambda0,
    )
