"""
AWMVC Unified Configuration
Single source of truth for runtime defaults used by the library and the CLI.

Priority: Environment Variables > awmvc.toml > defaults

Usage:
    from awmvc.config.settings import settings
    print(settings.THREADS)
    print(settings.KMEANS_RESTARTS)
"""
import os
from pathlib import Path
from dataclasses import dataclass, field
from typing import Optional, List, Dict, Any
from dotenv import load_dotenv

# Load .env file
load_dotenv()

VALID_FORMATS = ("bin", "csv")
VALID_ALPHA_RULES = ("paper", "kkt")
VALID_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _load_toml() -> Dict[str, Any]:
    """Read awmvc.toml from the working directory, falling back to the project root."""
    try:
        import tomllib  # Python 3.11+
    except ImportError:
        try:
            import tomli as tomllib  # Fallback for older Python
        except ImportError:
            return {}  # No TOML support

    for candidate in (Path.cwd() / "awmvc.toml", Path(__file__).parent.parent.parent / "awmvc.toml"):
        if candidate.exists():
            with open(candidate, "rb") as f:
                return tomllib.load(f)
    return {}


_toml_config: Dict[str, Any] = _load_toml()


def _get_toml(section: str, key: str, default=None):
    """Get value from TOML config."""
    if section in _toml_config:
        return _toml_config[section].get(key, default)
    return default


def _get_env(key: str, default: str = None, toml_section: str = None, toml_key: str = None) -> Optional[str]:
    """Get setting with priority: env > toml > default."""
    env_val = os.getenv(key)
    if env_val is not None and env_val != "":
        return env_val

    if toml_section and toml_key:
        toml_val = _get_toml(toml_section, toml_key)
        if toml_val is not None:
            return str(toml_val)

    return default


def _get_bool(key: str, default: bool = False, toml_section: str = None, toml_key: str = None) -> bool:
    """Get boolean setting."""
    val = _get_env(key, str(default), toml_section, toml_key)
    if val is None:
        return default
    return str(val).lower() in ("true", "1", "yes", "on")


def _get_int(key: str, default: int, toml_section: str = None, toml_key: str = None) -> int:
    """Get integer setting."""
    val = _get_env(key, str(default), toml_section, toml_key)
    try:
        return int(val)
    except (ValueError, TypeError):
        return default


def _get_float(key: str, default: float, toml_section: str = None, toml_key: str = None) -> float:
    val = _get_env(key, repr(default), toml_section, toml_key)
    try:
        return float(val)
    except (ValueError, TypeError):
        return default


@dataclass
class AwmvcSettings:
    """
    Centralized configuration for awmvc.
    Numeric defaults mirror the experiment protocol (50 solver sweeps,
    50 k-means restarts); everything is overridable per call.
    """

    # ==========================================================================
    # RUNTIME
    # ==========================================================================
    DEBUG: bool = field(default_factory=lambda: _get_bool("AWMVC_DEBUG", False, "runtime", "debug"))
    """Enable debug logging in the CLI"""

    LOG_LEVEL: str = field(default_factory=lambda: _get_env("AWMVC_LOG_LEVEL", "WARNING", "runtime", "log_level").upper())
    """Root log level used by the CLI when no -v flag is given"""

    @property
    def THREADS(self) -> int:
        """Worker cap for p-indexed solver updates and k-means restarts (AWMVC_THREADS)."""
        default = min(4, os.cpu_count() or 1)
        return _get_int("AWMVC_THREADS", default, "runtime", "threads")

    # ==========================================================================
    # DATASETS
    # ==========================================================================
    DEFAULT_FORMAT: str = field(default_factory=lambda: _get_env("AWMVC_DEFAULT_FORMAT", "bin", "dataset", "format"))
    """Payload format for newly written view files: 'bin' or 'csv'"""

    # ==========================================================================
    # SOLVER DEFAULTS
    # ==========================================================================
    MAX_ITER: int = field(default_factory=lambda: _get_int("AWMVC_MAX_ITER", 50, "solver", "max_iter"))
    TOL: float = field(default_factory=lambda: _get_float("AWMVC_TOL", 1e-6, "solver", "tol"))
    ALPHA_RULE: str = field(default_factory=lambda: _get_env("AWMVC_ALPHA_RULE", "paper", "solver", "alpha_rule"))
    EMBEDDINGS: int = field(default_factory=lambda: _get_int("AWMVC_EMBEDDINGS", 3, "solver", "m"))

    # ==========================================================================
    # K-MEANS DEFAULTS
    # ==========================================================================
    KMEANS_RESTARTS: int = field(default_factory=lambda: _get_int("AWMVC_KMEANS_RESTARTS", 50, "kmeans", "restarts"))
    MAX_LLOYD_ITERS: int = field(default_factory=lambda: _get_int("AWMVC_MAX_LLOYD_ITERS", 100, "kmeans", "max_lloyd_iters"))

    # ==========================================================================
    # HELPER METHODS
    # ==========================================================================
    def validate(self) -> List[str]:
        """Validate configuration and return list of errors."""
        errors = []

        if self.DEFAULT_FORMAT not in VALID_FORMATS:
            errors.append(f"AWMVC_DEFAULT_FORMAT must be one of {VALID_FORMATS}, got {self.DEFAULT_FORMAT!r}")
        if self.ALPHA_RULE not in VALID_ALPHA_RULES:
            errors.append(f"AWMVC_ALPHA_RULE must be one of {VALID_ALPHA_RULES}, got {self.ALPHA_RULE!r}")
        if self.LOG_LEVEL not in VALID_LOG_LEVELS:
            errors.append(f"AWMVC_LOG_LEVEL must be one of {VALID_LOG_LEVELS}, got {self.LOG_LEVEL!r}")
        if self.THREADS < 1:
            errors.append("AWMVC_THREADS must be a positive integer")
        if self.MAX_ITER < 1:
            errors.append("AWMVC_MAX_ITER must be a positive integer")
        if self.TOL <= 0:
            errors.append("AWMVC_TOL must be positive")
        if self.KMEANS_RESTARTS < 1:
            errors.append("AWMVC_KMEANS_RESTARTS must be a positive integer")

        return errors

    def to_dict(self) -> dict:
        """Convert settings to dictionary (for debugging and `awmvc config`)."""
        return {
            "DEBUG": self.DEBUG,
            "LOG_LEVEL": self.LOG_LEVEL,
            "THREADS": self.THREADS,
            "DEFAULT_FORMAT": self.DEFAULT_FORMAT,
            "MAX_ITER": self.MAX_ITER,
            "TOL": self.TOL,
            "ALPHA_RULE": self.ALPHA_RULE,
            "EMBEDDINGS": self.EMBEDDINGS,
            "KMEANS_RESTARTS": self.KMEANS_RESTARTS,
            "MAX_LLOYD_ITERS": self.MAX_LLOYD_ITERS,
        }


# Singleton instance
settings = AwmvcSettings()
