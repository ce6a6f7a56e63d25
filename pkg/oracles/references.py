"""
Brute-force references for the numerical engine.

Nothing here calls the engine's radiation, search or meshing code: the
field evaluator is a scalar loop, the state search enumerates every
configuration and the integrals go through scipy's adaptive quadrature.
They are slow and single-threaded.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy import integrate, special

from config import settings
from core.errors import DomainError


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    engine: complex
    oracle: complex
    rel_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.rel_error) <= self.tolerance

    @classmethod
    def compare(cls, quantity: str, engine, oracle, tolerance: float) -> "OracleReport":
        e = np.asarray(engine, dtype=complex).ravel()
        o = np.asarray(oracle, dtype=complex).ravel()
        scale = float(np.linalg.norm(o))
        diff = float(np.linalg.norm(e - o))
        rel = diff / scale if scale > 0.0 else diff
        first = lambda a: complex(a[0]) if a.size == 1 else complex(np.linalg.norm(a))
        return cls(quantity, first(e), first(o), rel, tolerance)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.quantity}: engine={self.engine:.6g} oracle={self.oracle:.6g} rel={self.rel_error:.3e} tol={self.tolerance:.1e}"


def direct_field(positions, currents, areas, u: Sequence[float], k: float) -> Tuple[complex, complex, complex]:
    """(−jkη0/4π)·Σ J e^{jk û·r′} dS, one source at a time."""
    ux, uy, uz = (float(c) for c in u)
    ex = ey = ez = 0j
    for (x, y, z), (jx, jy, jz), ds in zip(np.asarray(positions).tolist(),
                                          np.asarray(currents, dtype=complex).tolist(),
                                          np.asarray(areas).tolist()):
        w = cmath.exp(1j * k * (ux * x + uy * y + uz * z)) * ds
        ex += jx * w
        ey += jy * w
        ez += jz * w
    c = -1j * k * settings.ETA0 / (4.0 * math.pi)
    return c * ex, c * ey, c * ez


def exhaustive_states(values, T0: complex) -> Tuple[Tuple[int, ...], complex]:
    """Column per cell minimizing |T0 + Σ values[i][col]| over all S^N choices (first found on ties)."""
    rows = [[complex(v) for v in row] for row in np.asarray(values)]
    if len(rows) > 20:
        raise DomainError(f"exhaustive search over {len(rows)} cells is too large")
    best, best_total = (), complex(T0)
    best_mag = math.inf
    for choice in itertools.product(*[range(len(r)) for r in rows]):
        total = complex(T0)
        for row, c in zip(rows, choice):
            total += row[c]
        if abs(total) < best_mag:
            best, best_total, best_mag = choice, total, abs(total)
    return best, best_total


def aperture_directivity(D_ap: float, lambda0: float) -> float:
    """10·log10(4πA/λ²) of a uniformly illuminated circular aperture."""
    if lambda0 <= 0.0 or D_ap <= 0.0:
        raise DomainError(f"aperture diameter and wavelength must be positive (got {D_ap}, {lambda0})")
    A = math.pi * (0.5 * D_ap) ** 2
    return 10.0 * math.log10(4.0 * math.pi * A / lambda0 ** 2)


def aperture_pattern(theta, D_ap: float, lambda0: float):
    """Normalized field 2J1(x)/x, x = (πD/λ)sinθ, of the same aperture."""
    x = math.pi * D_ap / lambda0 * np.sin(np.asarray(theta, dtype=float))
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(np.abs(x) < 1e-12, 1.0, 2.0 * special.j1(x) / x)
    return out


def uniform_disk_sources(D_ap: float, lambda0: float, E0: float = 1.0, per_wavelength: int = 8):
    """Flat disk in z = 0 carrying J = 2E0/η0 ŷ, polar midpoint grid.

    Returns (positions, currents, areas, P) with P = |E0|²·ΣdS/(2η0) the power
    through the aperture.
    """
    R = 0.5 * D_ap
    n_r = max(2, math.ceil(R * per_wavelength / lambda0))
    dr = R / n_r
    pos, cur, dS = [], [], []
    for i in range(n_r):
        rho = (i + 0.5) * dr
        n_phi = max(8, math.ceil(2.0 * math.pi * rho * per_wavelength / lambda0))
        dphi = 2.0 * math.pi / n_phi
        for j in range(n_phi):
            phi = (j + 0.5) * dphi
            pos.append((rho * math.cos(phi), rho * math.sin(phi), 0.0))
            cur.append((0.0, 2.0 * E0 / settings.ETA0, 0.0))
            dS.append(rho * dr * dphi)
    areas = np.asarray(dS)
    P = abs(E0) ** 2 * float(areas.sum()) / (2.0 * settings.ETA0)
    return np.asarray(pos), np.asarray(cur, dtype=complex), areas, P


def cap_area_quad(theta_max: float, F: float) -> float:
    """∫ 2π r² sinθ′ sec(θ′/2) dθ′ with r = F sec²(θ′/2)."""
    f = lambda t: 2.0 * math.pi * (F / math.cos(0.5 * t) ** 2) ** 2 * math.sin(t) / math.cos(0.5 * t)
    value, _ = integrate.quad(f, 0.0, theta_max, epsabs=0.0, epsrel=1e-12, limit=200)
    return value


def feed_power_quad(E0: complex, q: float, theta0: float, verbatim: bool = False) -> float:
    """Power of the y-polarized feed through the cone θ′ ≤ θ0 (W).

    ``verbatim`` integrates the un-normalized polarization vector, whose
    squared length is 1/(1 − sin²θ′ sin²φ′).
    """
    def density(phi, theta):
        m = 1.0 / (1.0 - math.sin(theta) ** 2 * math.sin(phi) ** 2) if verbatim else 1.0
        return abs(E0) ** 2 * math.cos(theta) ** (2.0 * q) * m * math.sin(theta) / (2.0 * settings.ETA0)

    value, _ = integrate.dblquad(density, 0.0, theta0, 0.0, 2.0 * math.pi, epsabs=0.0, epsrel=1e-10)
    return value
