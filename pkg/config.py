import os
from typing import Any, Dict, Optional

from relalg.errors import ConfigError

DEFAULTS: Dict[str, str] = {
    "RELALG_MAX_CLOSURE": "10000",
    "RELALG_TOL_REP": "1e-6",
    "RELALG_TOL_DISTINCT": "1e-6",
    "RELALG_ALPHA": "0.5",
    "RELALG_LOG_LEVEL": "INFO",
}

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Config:
    """
    Settings for relalg, read from a .env file.

    - Parses KEY=VALUE pairs, ignoring blank lines and '#' comments
    - Accepts an optional 'export ' prefix and quoted values
    - Falls back to os.environ, then to DEFAULTS
    - get_int / get_float validate values and raise ConfigError naming the key
    """

    def __init__(self, env_file: str = ".env", encoding: str = "utf-8") -> None:
        self.env_file = env_file
        self.encoding = encoding
        self._values: Dict[str, str] = {}
        self.load()

    @staticmethod
    def _parse_line(raw_line: str) -> Optional[tuple]:
        line = raw_line.strip()
        if not line or line.startswith("#"):
            return None
        if line.startswith("export "):
            line = line[len("export "):].strip()
        if "=" not in line:
            return None

        key, value = (part.strip() for part in line.split("=", 1))
        if len(value) >= 2 and value[0] == value[-1] and value[0] in ("'", '"'):
            value = value[1:-1]
        elif " #" in value:
            value = value.split(" #", 1)[0].strip()
        return (key, value) if key else None

    def load(self) -> None:
        """(Re)load values from the .env file into memory."""
        values: Dict[str, str] = {}
        try:
            with open(self.env_file, "r", encoding=self.encoding) as f:
                for raw_line in f:
                    parsed = self._parse_line(raw_line)
                    if parsed is not None:
                        values[parsed[0]] = parsed[1]
        except FileNotFoundError:
            values = {}
        self._values = values

    def get(self, key: str, default: Optional[Any] = None) -> Optional[str]:
        """Value for `key` from the .env file, the environment, DEFAULTS or `default`."""
        if key in self._values:
            return self._values[key]
        if key in os.environ:
            return os.environ[key]
        if default is not None:
            return default
        return DEFAULTS.get(key)

    def get_int(self, key: str, minimum: int = 1) -> int:
        raw = self.get(key)
        try:
            value = int(str(raw).strip())
        except (TypeError, ValueError):
            raise ConfigError(f"{key} must be an integer, got {raw!r}") from None
        if value < minimum:
            raise ConfigError(f"{key} must be at least {minimum}, got {value}")
        return value

    def get_float(self, key: str, minimum: float = 0.0) -> float:
        raw = self.get(key)
        try:
            value = float(str(raw).strip())
        except (TypeError, ValueError):
            raise ConfigError(f"{key} must be a number, got {raw!r}") from None
        if not value >= minimum:
            raise ConfigError(f"{key} must be at least {minimum}, got {value}")
        return value

    @property
    def max_closure(self) -> int:
        return self.get_int("RELALG_MAX_CLOSURE")

    @property
    def tol_rep(self) -> float:
        return self.get_float("RELALG_TOL_REP")

    @property
    def tol_distinct(self) -> float:
        return self.get_float("RELALG_TOL_DISTINCT")

    @property
    def alpha(self) -> float:
        return self.get_float("RELALG_ALPHA")

    @property
    def log_level(self) -> str:
        level = str(self.get("RELALG_LOG_LEVEL")).strip().upper()
        if level not in LOG_LEVELS:
            raise ConfigError(f"RELALG_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got {level!r}")
        return level


__all__ = ["Config", "DEFAULTS", "LOG_LEVELS"]
