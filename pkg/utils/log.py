import logging
import sys

from utils.env_vars import is_debug_mode_on, get_log_file_path

FORMATTER = logging.Formatter("%(asctime)s — %(name)s — %(levelname)s — %(message)s")


def get_console_handler():
    # stdout is reserved for reports
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(FORMATTER)
    return console_handler


def get_file_handler(log_file: str):
    file_handler = logging.FileHandler(log_file)
    file_handler.setFormatter(FORMATTER)
    return file_handler


def get_logger(logger_name):
    logger = logging.getLogger(logger_name)
    log_level = logging.DEBUG if is_debug_mode_on() else logging.INFO
    logger.setLevel(log_level)
    if not logger.handlers:
        logger.addHandler(get_console_handler())
        log_file = get_log_file_path()
        if log_file:
            logger.addHandler(get_file_handler(log_file))
    # with this pattern, it's rarely necessary to propagate the error up to parent
    logger.propagate = False
    return logger
