"""Deterministic reductions and decibel helpers shared by the numeric modules."""

import numpy as np


def kahan_sum(partials: np.ndarray) -> np.ndarray:
    """Compensated sum over axis 0, visiting partials strictly in order.

    Works for real or complex arrays of any trailing shape; the order of
    accumulation is fixed so the result does not depend on how the partials
    were produced.
    """
    partials = np.asarray(partials)
    total = np.zeros(partials.shape[1:], dtype=partials.dtype)
    comp = np.zeros_like(total)
    for term in partials:
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total




def power_db(x) -> np.ndarray:
    """10·log10 for power-like quantities, -inf for zero."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(x)
