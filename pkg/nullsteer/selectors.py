from abc import ABC, abstractmethod
from typing import List, Tuple

import numpy as np


class StateSelector(ABC):
    """
    Base class for switch-state selection strategies.
    A selector sees the per-cell contribution table and the field left by the
    solid reflector, and returns one state column per cell.
    """
    name = "base"

    @abstractmethod
    def select(self, values: np.ndarray, T0: complex) -> Tuple[List[int], List[complex]]:
        """
        Args:
            values: (Ncell, S) complex contributions, columns ordered with the
                tie-winning state first.
            T0: field of everything that is not switchable.
        Returns:
            (column chosen per cell, running total after each cell)
        """
        pass


class SerialSelector(StateSelector):
    """Single pass over the cells; each picks the state leaving the smallest |total|."""
    name = "serial"

    def select(self, values, T0):
        total = complex(T0)
        choices, totals = [], []
        for row in values:
            best, best_mag = 0, abs(total + row[0])
            for s in range(1, row.shape[0]):
                mag = abs(total + row[s])
                if mag < best_mag:
                    best, best_mag = s, mag
            total = total + complex(row[best])
            choices.append(best)
            totals.append(total)
        return choices, totals
