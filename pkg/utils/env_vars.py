import os
from typing import Optional

from exceptions.exceptions import ConfigError

THREADS_ENV_VAR = 'TCPKIT_THREADS'
LOG_FILE_ENV_VAR = 'TCPKIT_LOG_FILE'


def is_debug_mode_on() -> bool:
    return is_env_var_on('DEBUG')


def is_env_var_on(env_var) -> bool:
    return os.getenv(env_var) == '1'


def get_log_file_path() -> Optional[str]:
    return os.getenv(LOG_FILE_ENV_VAR) or None


def get_threads_from_env() -> Optional[int]:
    raw_value = os.getenv(THREADS_ENV_VAR)
    if raw_value is None or raw_value.strip() == '':
        return None
    try:
        threads = int(raw_value)
    except ValueError:
        raise ConfigError(f'{THREADS_ENV_VAR} must be an integer, got {raw_value!r}')
    if threads < 1:
        raise ConfigError(f'{THREADS_ENV_VAR} must be at least 1, got {threads}')
    return threads
