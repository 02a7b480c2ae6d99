from typing import Dict, Type

from ...errors import DatasetValidationError
from .base import ViewFormat
from .binary import BinaryViewFormat
from .csv import CsvViewFormat


class ViewFormatRegistry:
    """Registry to map ``meta.json`` format names to payload formats."""

    _formats: Dict[str, Type[ViewFormat]] = {
        "bin": BinaryViewFormat,
        "csv": CsvViewFormat,
    }

    @classmethod
    def get_format(cls, name: str) -> ViewFormat:
        """
        Return an instance of the format registered under ``name``.
        Raises DatasetValidationError for unknown names.
        """
        format_cls = cls._formats.get(name)
        if format_cls is None:
            raise DatasetValidationError(
                f"unknown view format {name!r}; supported: {cls.names()}"
            )
        return format_cls()

    @classmethod
    def names(cls):
        return sorted(cls._formats)


def get_format(name: str) -> ViewFormat:
    """Convenience function to get a format instance."""
    return ViewFormatRegistry.get_format(name)
