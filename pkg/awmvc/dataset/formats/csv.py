from pathlib import Path

import numpy as np

from ...errors import DatasetValidationError
from .base import ViewFormat


class CsvViewFormat(ViewFormat):
    """One row per feature, n comma-separated decimals per row."""

    name = "csv"
    suffix = ".csv"

    def write(self, path: Path, matrix: np.ndarray) -> None:
        # 17 significant digits round-trips every float64
        np.savetxt(path, np.atleast_2d(matrix), delimiter=",", fmt="%.17g")

    def read(self, path: Path) -> np.ndarray:
        try:
            data = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
        except ValueError as e:
            raise DatasetValidationError(f"malformed CSV payload in {path}: {e}") from e
        return data
