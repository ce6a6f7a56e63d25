"""Physical-optics surface currents through local reflection dyads."""

from __future__ import annotations

import numpy as np

from config import settings
from core.errors import ContractViolation
from scattering.dyads import ReflectionDyad

TRANSVERSE_TOL = 1e-9

# order of the four unit dyads used for linear decompositions
DYAD_BASIS = ("tt", "tp", "pt", "pp")


def _dot(a, b):
    return np.asarray(np.sum(a * b, axis=-1))


def local_polarization_basis(sample):
    """TM/TE unit vectors and the specular direction at a sample or a whole mesh.

    Returns (e_TM_i, e_TE, e_TM_r, k_r): e_TE = y_l for both waves,
    e_TM_i = e_TE × k̂ⁱ and e_TM_r = k̂ʳ × e_TE, which makes R = -I the
    perfect-conductor boundary condition.
    """
    n_hat = np.asarray(sample.z_l, dtype=float)
    k_i = np.asarray(sample.position, dtype=float)
    k_i = k_i / np.linalg.norm(k_i, axis=-1, keepdims=True)
    k_r = k_i - 2.0 * _dot(k_i, n_hat)[..., None] * n_hat
    e_te = np.asarray(sample.y_l, dtype=float)
    e_tm_i = np.cross(e_te, k_i)
    e_tm_r = np.cross(k_r, e_te)
    return e_tm_i, e_te, e_tm_r, k_r


def _check_transverse(E_i, k_i):
    along = np.abs(_dot(E_i, k_i))
    scale = np.linalg.norm(E_i, axis=-1)
    if np.any(along > TRANSVERSE_TOL * np.maximum(scale, np.finfo(float).tiny)):
        raise ContractViolation("incident field is not transverse to the incident direction")


def decompose(sample, E_i):
    """Incident field components (E_TM, E_TE) in the local basis."""
    e_tm_i, e_te, _, _ = local_polarization_basis(sample)
    E_i = np.asarray(E_i, dtype=complex)
    return _dot(E_i, e_tm_i), _dot(E_i, e_te)


def _as_matrices(dyad, n):
    if isinstance(dyad, ReflectionDyad):
        return np.broadcast_to(dyad.matrix, (n, 2, 2)) if n else dyad.matrix
    return np.asarray(dyad, dtype=complex)


def reflected_field(sample, dyad, E_i):
    """Reflected field Ēʳ and its (TM, TE) components for one or many samples.

    ``dyad`` is a ReflectionDyad or an array of 2×2 matrices matching the samples.
    """
    e_tm_i, e_te, e_tm_r, k_r = local_polarization_basis(sample)
    k_i = np.asarray(sample.position, dtype=float)
    k_i = k_i / np.linalg.norm(k_i, axis=-1, keepdims=True)
    E_i = np.asarray(E_i, dtype=complex)
    _check_transverse(E_i, k_i)
    a_tm = _dot(E_i, e_tm_i)
    a_te = _dot(E_i, e_te)
    n = a_tm.shape[0] if a_tm.ndim else 0
    R = _as_matrices(dyad, n)
    r_tm = R[..., 0, 0] * a_tm + R[..., 0, 1] * a_te
    r_te = R[..., 1, 0] * a_tm + R[..., 1, 1] * a_te
    E_r = r_tm[..., None] * e_tm_r + r_te[..., None] * e_te
    return E_r, r_tm, r_te, k_r


def surface_current(sample, dyad, E_i) -> np.ndarray:
    """J_s = 2n̂ × H̄ʳ with H̄ʳ = k̂ʳ × Ēʳ/η0 and Ēʳ = R·Ēⁱ in the local basis (A/m)."""
    E_r, _, _, k_r = reflected_field(sample, dyad, E_i)
    H_r = np.cross(k_r, E_r) / settings.ETA0
    return 2.0 * np.cross(np.asarray(sample.z_l, dtype=float), H_r)


def pec_current(sample, E_i) -> np.ndarray:
    """Textbook PO current 2n̂ × H̄ⁱ with H̄ⁱ = k̂ⁱ × Ēⁱ/η0."""
    k_i = np.asarray(sample.position, dtype=float)
    k_i = k_i / np.linalg.norm(k_i, axis=-1, keepdims=True)
    H_i = np.cross(k_i, np.asarray(E_i, dtype=complex)) / settings.ETA0
    return 2.0 * np.cross(np.asarray(sample.z_l, dtype=float), H_i)


def unit_dyad_currents(mesh, E_i) -> np.ndarray:
    """Currents for the four unit dyads, shape (N, 4, 3) in DYAD_BASIS order.

    The current for any dyad R is Σ_ab R_ab · J_ab, which lets the state
    search evaluate every candidate state from one set of radiated fields.
    """
    e_tm_i, e_te, e_tm_r, k_r = local_polarization_basis(mesh)
    k_i = mesh.k_i
    E_i = np.asarray(E_i, dtype=complex)
    _check_transverse(E_i, k_i)
    a_tm = _dot(E_i, e_tm_i)[:, None]
    a_te = _dot(E_i, e_te)[:, None]
    n_hat = mesh.z_l
    reflected = (
        a_tm * e_tm_r,  # tt: TM -> TM
        a_te * e_tm_r,  # tp: TE -> TM
        a_tm * e_te,    # pt: TM -> TE
        a_te * e_te,    # pp: TE -> TE
    )
    out = np.empty((len(mesh), 4, 3), dtype=complex)
    for i, E_r in enumerate(reflected):
        out[:, i, :] = 2.0 * np.cross(n_hat, np.cross(k_r, E_r)) / settings.ETA0
    return out


def dyad_coefficients(dyad: ReflectionDyad) -> np.ndarray:
    """Dyad entries in DYAD_BASIS order."""
    return np.array([dyad.r_tt, dyad.r_tp, dyad.r_pt, dyad.r_pp], dtype=complex)
