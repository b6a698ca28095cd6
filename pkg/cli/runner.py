import importlib
import json
import sys
import time
from typing import Callable, List

import click

from cli.run_config import RunConfig
from exceptions.exceptions import Error
from utils.log import get_logger
from utils.thread_spinner import ThreadSpinner
from utils.time import local_timestamp, format_milliseconds

logger = get_logger(__name__)

EXIT_SUCCESS = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

COMMAND_RUNNERS = {'classify': 'classify.cli:run_classify',
                   'solve': 'tcp.cli:run_solve',
                   'feasible': 'tcp.cli:run_feasible',
                   'pm-check': 'tcp.cli:run_pm_check',
                   'pareto': 'pareto.cli:run_pareto',
                   'beta': 'bounds.cli:run_beta',
                   'bounds': 'bounds.cli:run_bounds',
                   'gamma': 'bounds.cli:run_gamma'}


class CommandOutcome(object):
    """What a command produced: its exit code, the module's JSON result and a human summary."""

    def __init__(self, exit_code: int, result: dict, summary: List[str]) -> None:
        self.exit_code = exit_code
        self.result = result
        self.summary = summary


class RunOutcome(object):
    def __init__(self, exit_code: int, report: dict, summary: List[str], error: str = None) -> None:
        self.exit_code = exit_code
        self.report = report
        self.summary = summary
        self.error = error

    def to_json(self) -> str:
        return json.dumps(self.report, indent=2)


def _resolve(command: str) -> Callable[[RunConfig], CommandOutcome]:
    module_name, function_name = COMMAND_RUNNERS[command].split(':')
    return getattr(importlib.import_module(module_name), function_name)


def run(config: RunConfig) -> RunOutcome:
    started_at = local_timestamp()
    start = time.perf_counter()
    try:
        outcome = _resolve(config.command)(config)
    except Error as exc:
        logger.debug(f'{config.command} failed with {type(exc).__name__}')
        timing = {'started_at': started_at, 'elapsed_ms': (time.perf_counter() - start) * 1000}
        return RunOutcome(EXIT_ERROR, {'config': config.to_dict(), 'error': exc.message, 'timing': timing},
                          [], error=exc.message)

    timing = {'started_at': started_at, 'elapsed_ms': (time.perf_counter() - start) * 1000}
    report = {'config': config.to_dict(), 'result': outcome.result, 'timing': timing}
    return RunOutcome(outcome.exit_code, report, outcome.summary)


def _write_output(path: str, text: str) -> None:
    try:
        with open(path, 'w') as file_obj:
            file_obj.write(text + '\n')
    except OSError as exc:
        click.echo(f'Error: could not write report to {path} - {exc.strerror}', err=True)
        sys.exit(EXIT_ERROR)


def execute(config: RunConfig) -> None:
    with ThreadSpinner(f'tcpkit {config.command}', enabled=config.human):
        outcome = run(config)

    if outcome.error is not None:
        click.echo(f'Error: {outcome.error}', err=True)
        sys.exit(EXIT_ERROR)

    text = outcome.to_json()
    if config.output:
        _write_output(config.output, text)
    if config.json_output:
        click.echo(text)
    elif not config.quiet:
        for line in outcome.summary:
            click.echo(line)
        click.echo(f'Elapsed: {format_milliseconds(outcome.report["timing"]["elapsed_ms"])}')
    sys.exit(outcome.exit_code)


def invoke(command: str, common: dict, inputs: dict, options: dict) -> None:
    """Entry point of every subcommand: builds the RunConfig, then runs and reports."""
    try:
        config = RunConfig.create(command, common, inputs, options)
    except Error as exc:
        click.echo(f'Error: {exc.message}', err=True)
        sys.exit(EXIT_ERROR)
    execute(config)
