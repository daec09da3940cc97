import configparser
import functools
import os
from pathlib import Path
from typing import Dict

import typer

from .logging import info, error


CACHE_ENV_VAR = "WITTENZETA_CACHE"


@functools.cache
def user_config():
    """Read and cache settings from user configuration"""
    return UserConfig()

def user_config_path(target: str = "") -> Path:
    """Get Path to the given target within the user configuration directory"""
    return user_config().CONFIG_PATH / target

def default_cache_path() -> Path:
    """Cache directory from config, then environment, then the config directory"""
    configured = user_config().get("cache", "directory")
    if configured:
        return Path(configured)
    if os.environ.get(CACHE_ENV_VAR):
        return Path(os.environ[CACHE_ENV_VAR])
    return user_config_path("cache")


class InvalidConfig(ValueError):
    pass


class UserConfig:
    """User-specific configuration"""

    CONFIG_PATH = Path(typer.get_app_dir("wittenzeta"))
    CONFIG_FILE = CONFIG_PATH / "config.ini"

    DEFAULTS: Dict[str, Dict[str, str]] = dict(
        general=dict(
            budget="5000000",
            threads="1",
            weyl_budget="100000",
            cell_budget="20000",
        ),
        numeric=dict(
            target_digits="30",
            guard_digits="10",
            multisum_cutoff="200",
            quad_nodes="12",
        ),
        cache=dict(
            enabled="yes",
            directory="",
        ),
    )

    INTEGER_SETTINGS = {
        "general:budget", "general:threads", "general:weyl_budget", "general:cell_budget",
        "numeric:target_digits", "numeric:guard_digits", "numeric:multisum_cutoff",
        "numeric:quad_nodes",
    }


    @classmethod
    def run(cls, setting, value) -> None:
        if ":" in setting:
            section, key = setting.split(":")
        else:
            section, key = "general", setting
        user_config().update(section, key, value)


    def __init__(self, path: Path = None):
        """Get the configuration, from file if it exists or start from defaults"""
        self.path = path or self.CONFIG_FILE
        self.parser = configparser.ConfigParser()
        self._set_defaults()
        if Path.exists(self.path):
            self.parser.read(self.path)


    def get(self, section, key) -> str:
        return self.parser.get(section, key)


    def getint(self, section, key) -> int:
        return self.parser.getint(section, key)


    def getboolean(self, section, key) -> bool:
        return self.parser.getboolean(section, key)


    def update(self, section, key, value) -> None:
        """Update a setting and write changes to configuration file"""
        try:
            if not self.parser.has_section(section):
                raise InvalidConfig(f"Unknown configuration section: {section}")
            if not self.parser.has_option(section, key):
                raise InvalidConfig(f"Unknown configuration setting: {section}:{key}")
            if f"{section}:{key}" in self.INTEGER_SETTINGS:
                if not value.isdigit() or int(value) < 1:
                    raise InvalidConfig(f"Invalid value for {section}:{key}: {value} - must be a positive integer")
            if section == "cache" and key == "enabled":
                if value not in ("yes", "no"):
                    raise InvalidConfig(f"Invalid value for cache:enabled: {value} - must be yes or no")
            self.parser.set(section, key, value)
            self._write_to_file()
            info(f"Configuration setting {section}:{key} updated.")
        except InvalidConfig as ex:
            error(str(ex))


    def _write_to_file(self) -> None:
        Path.mkdir(self.path.parent, parents=True, exist_ok=True)
        with open(self.path, "w+") as f:
            self.parser.write(f)


    def _set_defaults(self) -> None:
        for section, settings in self.DEFAULTS.items():
            self.parser.add_section(section)
            for key, value in settings.items():
                self.parser.set(section, key, value)
