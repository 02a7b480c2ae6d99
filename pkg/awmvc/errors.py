"""
Exception types shared across awmvc.

Each error carries the process exit code the CLI maps it to, and also
derives from the closest builtin so library callers can catch
``ValueError`` / ``OSError`` / ``ArithmeticError`` as usual.
"""

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERIC = 4
EXIT_IO = 5


class AwmvcError(Exception):
    exit_code: int = 1


class ConfigError(AwmvcError, ValueError):
    """Solver / k-means configuration incompatible with the data."""
    exit_code = EXIT_VALIDATION


class DatasetValidationError(AwmvcError, ValueError):
    """Dataset content violates a shape, finiteness or label invariant."""
    exit_code = EXIT_VALIDATION


class LabelError(AwmvcError, ValueError):
    exit_code = EXIT_VALIDATION


class DatasetIOError(AwmvcError, OSError):
    exit_code = EXIT_IO


class NumericalError(AwmvcError, ArithmeticError):
    """Non-finite values or a failed decomposition inside the optimizer."""
    exit_code = EXIT_NUMERIC
