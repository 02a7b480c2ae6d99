from abc import ABC, abstractmethod
from pathlib import Path

import numpy as np


class ViewFormat(ABC):
    """
    Abstract base class for on-disk view payload formats.

    A format reads and writes one d_v x n float64 matrix per file; the
    dataset-level ``meta.json`` names the format of each view.
    """

    name: str
    suffix: str

    @abstractmethod
    def write(self, path: Path, matrix: np.ndarray) -> None:
        """Write ``matrix`` (rows = features) to ``path``."""
        pass

    @abstractmethod
    def read(self, path: Path) -> np.ndarray:
        """Return the stored matrix as a float64 array."""
        pass

    def filename(self, stem: str) -> str:
        return f"{stem}{self.suffix}"
