import numbers
import os
from os.path import expanduser
from typing import Optional

from exceptions.exceptions import ConfigError, InvalidParameterError
from search.budget import ENUMERATION_MAX_DIM, SearchBudget
from utils.env_vars import get_threads_from_env
from utils.ordered_yaml import OrderedYaml

ordered_yaml = OrderedYaml()

DEFAULT_CONFIG_DIR = os.path.join(expanduser('~'), '.tcpkit')


class Config(object):
    CONFIG_FILE_NAME = 'config.yml'
    BUDGET = 'budget'
    THREADS = 'threads'
    ENUMERATION_MAX_DIM = 'enumeration_max_dim'

    def __init__(self, config_dir: Optional[str] = None) -> None:
        self.config_dir = config_dir if config_dir is not None else DEFAULT_CONFIG_DIR
        self.config_dict = self._load_configuration()

    def _load_configuration(self) -> dict:
        config_file_path = os.path.join(self.config_dir, self.CONFIG_FILE_NAME)
        if not os.path.exists(config_file_path):
            return {}

        try:
            config_dict = ordered_yaml.load(config_file_path)
        except Exception as exc:
            raise ConfigError(f'Could not parse {config_file_path} - {exc}')
        if config_dict is None:
            return {}
        if not isinstance(config_dict, dict):
            raise ConfigError(f'{config_file_path} must hold a mapping at the top level')
        return config_dict

    @property
    def budget_dict(self) -> dict:
        budget_dict = self.config_dict.get(self.BUDGET) or {}
        if not isinstance(budget_dict, dict):
            raise ConfigError(f'"{self.BUDGET}" in {self.CONFIG_FILE_NAME} must be a mapping')
        unknown = set(budget_dict) - set(SearchBudget.FIELDS)
        if unknown:
            raise ConfigError(f'Unknown budget keys in {self.CONFIG_FILE_NAME}: {sorted(unknown)}')
        return dict(budget_dict)

    def _optional_int(self, key: str) -> Optional[int]:
        value = self.config_dict.get(key)
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
            raise ConfigError(f'"{key}" in {self.CONFIG_FILE_NAME} must be a positive integer, got {value!r}')
        return int(value)

    @property
    def threads(self) -> Optional[int]:
        return self._optional_int(self.THREADS)

    @property
    def enumeration_max_dim(self) -> int:
        value = self._optional_int(self.ENUMERATION_MAX_DIM)
        return ENUMERATION_MAX_DIM if value is None else value

    def resolve_threads(self, threads: Optional[int] = None) -> Optional[int]:
        """--threads, then the environment, then the config file; None leaves the choice to the worker pool."""
        if threads is not None:
            return threads
        env_threads = get_threads_from_env()
        if env_threads is not None:
            return env_threads
        return self.threads

    def search_budget(self, threads: Optional[int] = None, **overrides) -> SearchBudget:
        values = self.budget_dict
        applied = {key: value for key, value in overrides.items() if value is not None}
        values.update(applied)
        try:
            return SearchBudget(threads=self.resolve_threads(threads), **values)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f'Invalid budget configuration - {exc}')
        except InvalidParameterError as exc:
            if applied:
                raise
            raise ConfigError(f'Invalid budget in {self.CONFIG_FILE_NAME} - {exc.message}')
