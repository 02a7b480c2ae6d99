from .base import ViewFormat
from .binary import BinaryViewFormat
from .csv import CsvViewFormat
from .registry import ViewFormatRegistry, get_format

__all__ = [
    "ViewFormat",
    "BinaryViewFormat",
    "CsvViewFormat",
    "ViewFormatRegistry",
    "get_format",
]
