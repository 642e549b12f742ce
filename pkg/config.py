"""Configuration settings for the JCEntangle toolkit."""
import math
import os
from dataclasses import dataclass
from typing import Any, Dict, Optional

from dotenv import dotenv_values

from errors import ConfigFileError


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by every service."""

    hermitian: float = 1e-10
    eigen_clamp: float = 1e-12
    jacobi_offdiag: float = 1e-14
    jacobi_max_sweeps: int = 100
    density: float = 1e-12
    entropy_slack: float = 1e-12
    normalization: float = 1e-12
    oracle_fock: float = 1e-12
    oracle_thermal: float = 1e-10
    truncation_leak: float = 1e-15


TOLERANCES = Tolerances()


class Config:
    """Base configuration."""

    GT_MIN = 0.0
    GT_MAX = 2.0 * math.pi
    STEPS = 1000
    TAIL_EPSILON = 1e-12
    VERIFY_STRIDE = 16

    FIG2_FOCK_NUMBERS = (0, 10, 100)
    FIG3_MEAN_PHOTONS = (0.1, 1.0, 10.0)
    FIG3_SPOT_CHECKS = 8

    CSV_SIGNIFICANT_DIGITS = 12
    ORACLE_MARGIN = 3
    MAX_DIMENSION = int(os.getenv("JCENT_MAX_DIMENSION", 4096))
    # largest photon number a distribution may carry
    MAX_PHOTON_NUMBER = int(os.getenv("JCENT_MAX_PHOTON_NUMBER", 100000))

    LOG_LEVEL = os.getenv("JCENT_LOG_LEVEL", "WARNING")
    LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

    # settings a config file or the command line may override
    OVERRIDABLE = (
        "GT_MIN",
        "GT_MAX",
        "STEPS",
        "TAIL_EPSILON",
        "VERIFY_STRIDE",
        "FIG2_FOCK_NUMBERS",
        "FIG3_MEAN_PHOTONS",
        "FIG3_SPOT_CHECKS",
        "CSV_SIGNIFICANT_DIGITS",
        "LOG_LEVEL",
    )

    @classmethod
    def as_dict(cls) -> dict:
        return {key: getattr(cls, key) for key in cls.OVERRIDABLE}


def _coerce(key: str, raw: str, default):
    """Parse a config-file string into the type of the matching default."""
    try:
        if isinstance(default, tuple):
            kind = type(default[0]) if default else float
            return tuple(kind(item.strip()) for item in raw.split(",") if item.strip())
        if isinstance(default, bool):
            return raw.strip().lower() in ("1", "true", "yes", "on")
        return type(default)(raw.strip())
    except ValueError as exc:
        raise ConfigFileError(f"{key}: cannot parse {raw!r} ({exc})") from exc


def load_settings(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Resolve settings: ``Config`` defaults, overridden by a KEY=VALUE file when given.

    Command-line flags override the result at the call site.
    """
    settings = Config.as_dict()
    if path is None:
        return settings
    if not os.path.isfile(path):
        raise ConfigFileError(f"config file not found: {path}")
    for key, raw in dotenv_values(path).items():
        name = key.strip().upper()
        if name not in settings:
            raise ConfigFileError(f"unknown setting {key!r} in {path}")
        if raw is None:
            raise ConfigFileError(f"setting {key!r} in {path} has no value")
        settings[name] = _coerce(name, raw, settings[name])
    return settings
