import configparser
import os
from typing import Optional

from src.errors import ConfigurationError

SETTINGS_FILE = 'settings.ini'
DEFAULT_EDGE_BUDGET = 60
BUDGET_ENV = 'HYPEREDIT_EDGE_BUDGET'
LOG_LEVEL_ENV = 'HYPEREDIT_LOG_LEVEL'

DEFAULTS = {
    'oracle': {
        'edge_budget': str(DEFAULT_EDGE_BUDGET),
    },
    'matching': {
        'prune': 'no',
    },
    'harness': {
        'density': '0.3',
        'workers': '1',
        'max_part_size': '2',
        'max_vertices': '6',
    },
    'logging': {
        'level': 'INFO',
    },
}


class Settings:
    def __init__(self, config: configparser.ConfigParser):
        self.config = config

    def _get_int(self, section: str, key: str) -> int:
        try:
            return self.config.getint(section, key)
        except ValueError:
            raise ConfigurationError(
                f"[{section}] {key} must be an integer, "
                f"got {self.config.get(section, key)!r}")

    def _get_float(self, section: str, key: str) -> float:
        try:
            return self.config.getfloat(section, key)
        except ValueError:
            raise ConfigurationError(
                f"[{section}] {key} must be a number, "
                f"got {self.config.get(section, key)!r}")

    @property
    def edge_budget(self) -> int:
        override = os.environ.get(BUDGET_ENV)
        if override:
            try:
                return int(override)
            except ValueError:
                raise ConfigurationError(
                    f"{BUDGET_ENV} must be an integer, got {override!r}")
        return self._get_int('oracle', 'edge_budget')

    @property
    def prune(self) -> bool:
        try:
            return self.config.getboolean('matching', 'prune')
        except ValueError:
            raise ConfigurationError("[matching] prune must be yes or no")

    @property
    def density(self) -> float:
        return self._get_float('harness', 'density')

    @property
    def workers(self) -> int:
        return self._get_int('harness', 'workers')

    @property
    def max_part_size(self) -> int:
        return self._get_int('harness', 'max_part_size')

    @property
    def max_vertices(self) -> int:
        return self._get_int('harness', 'max_vertices')

    @property
    def log_level(self) -> str:
        return os.environ.get(LOG_LEVEL_ENV,
                              self.config.get('logging', 'level')).upper()


def write_default_settings(path: str = SETTINGS_FILE) -> None:
    """
    Create and save default settings file.

    Parameters
    ----------
    path: str
        Destination of the ini file.

    Returns
    -------
    None
    """
    config = configparser.ConfigParser()
    config.read_dict(DEFAULTS)
    with open(path, 'w') as configfile:
        config.write(configfile)


def load_settings(path: Optional[str] = None,
                  create_missing: bool = False) -> Settings:
    """
    Read settings, falling back to defaults for missing sections and keys.

    With ``create_missing`` a missing default ``settings.ini`` in the
    working directory is written out with the default values.

    Parameters
    ----------
    path: str, optional
        Ini file to read.
    create_missing: bool
        Write the defaults when the default file does not exist.

    Returns
    -------
    Settings
    """
    config = configparser.ConfigParser()
    config.read_dict(DEFAULTS)
    if path is None:
        path = SETTINGS_FILE
        if create_missing and not os.path.exists(path):
            try:
                write_default_settings(path)
            except OSError:
                pass
    config.read(path)
    return Settings(config)
