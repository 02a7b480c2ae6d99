import struct
from pathlib import Path

import numpy as np

from ...errors import DatasetValidationError
from .base import ViewFormat

MAGIC = b"MVDM"
VERSION = 1
_HEADER = struct.Struct("<4sIQQ")


class BinaryViewFormat(ViewFormat):
    """
    ``MVDM`` magic, u32 version, u64 rows, u64 cols, then rows*cols
    little-endian f64 values in row-major order.
    """

    name = "bin"
    suffix = ".bin"

    def write(self, path: Path, matrix: np.ndarray) -> None:
        matrix = np.ascontiguousarray(matrix, dtype="<f8")
        rows, cols = matrix.shape
        with open(path, "wb") as f:
            f.write(_HEADER.pack(MAGIC, VERSION, rows, cols))
            f.write(matrix.tobytes(order="C"))

    def read(self, path: Path) -> np.ndarray:
        with open(path, "rb") as f:
            raw = f.read()
        if len(raw) < _HEADER.size:
            raise DatasetValidationError(f"{path} is too short to hold an MVDM header")
        magic, version, rows, cols = _HEADER.unpack_from(raw, 0)
        if magic != MAGIC:
            raise DatasetValidationError(f"{path} has bad magic {magic!r}, expected {MAGIC!r}")
        if version != VERSION:
            raise DatasetValidationError(f"{path} has unsupported version {version}")
        payload = raw[_HEADER.size:]
        expected = rows * cols * 8
        if len(payload) != expected:
            raise DatasetValidationError(
                f"{path} header declares {rows}x{cols} ({expected} bytes) but payload has {len(payload)} bytes"
            )
        return np.frombuffer(payload, dtype="<f8").reshape(rows, cols).astype(np.float64)
