import logging
import os
from pathlib import Path
from string import Template
from typing import Any, Dict, Optional, Union

import yaml
from appdirs import user_config_dir

from .errors import InvalidInputError

logger = logging.getLogger("nonlevel")

DEFAULTS_FILE = Path(__file__).parent.parent / "config" / "defaults.yaml"
ENV_PREFIX = "NONLEVEL_"


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class Settings:
    """
    Layered configuration: packaged defaults, then the user config file
    (``--config`` or the appdirs config directory), each run through
    ``string.Template`` substitution with ``NONLEVEL_*`` environment variables
    before YAML parsing.
    """

    def __init__(self, values: Optional[Dict[str, Any]] = None):
        self.values = values or {}

    @classmethod
    def load(
        cls,
        config_path: Optional[Union[str, Path]] = None,
        context: Optional[Dict[str, str]] = None,
    ) -> "Settings":
        if context is None:
            context = {k: v for k, v in os.environ.items() if k.startswith(ENV_PREFIX)}

        values = cls._read(DEFAULTS_FILE, context)

        if config_path:
            user_file = Path(config_path).expanduser().resolve()
            if not user_file.is_file():
                raise InvalidInputError(f"Config file not found: {user_file}")
        else:
            user_file = Path(user_config_dir(appname="nonlevel", appauthor=False)) / "config.yaml"

        if user_file.is_file():
            logger.debug(f"Merging user config from {user_file}")
            values = _merge(values, cls._read(user_file, context))

        return cls(values)

    @staticmethod
    def _read(path: Path, context: Dict[str, str]) -> Dict[str, Any]:
        raw_content = path.read_text(encoding="utf-8")
        substituted = Template(raw_content).safe_substitute(context)
        try:
            loaded = yaml.safe_load(substituted) or {}
        except yaml.YAMLError as e:
            raise InvalidInputError(f"YAML parsing error in {path}: {e}") from e
        if not isinstance(loaded, dict):
            raise InvalidInputError(f"Config file {path} must contain a mapping")
        return loaded

    def get(self, dotted_key: str, default: Any = None) -> Any:
        node: Any = self.values
        for part in dotted_key.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def _int(self, dotted_key: str, default: int) -> int:
        value = self.get(dotted_key, default)
        try:
            return int(value)
        except (TypeError, ValueError) as e:
            raise InvalidInputError(
                f"Config value '{dotted_key}' must be an integer, got {value!r}"
            ) from e

    @property
    def oracle_prime(self) -> int:
        return self._int("oracle.prime", 32003)

    @property
    def cross_check_prime(self) -> int:
        return self._int("oracle.cross_check_prime", 101)

    @property
    def enumerate_jobs(self) -> int:
        return self._int("enumerate.jobs", 1)

    @property
    def enumerate_chunk_size(self) -> int:
        return self._int("enumerate.chunk_size", 64)

    @property
    def schema_version(self) -> int:
        return self._int("output.schema_version", 1)

    @property
    def log_verbosity(self) -> str:
        return str(self.get("logging.verbosity", "info"))

    @property
    def log_max_bytes(self) -> int:
        return self._int("logging.max_bytes", 5 * 1024 * 1024)

    @property
    def log_backup_count(self) -> int:
        return self._int("logging.backup_count", 5)
