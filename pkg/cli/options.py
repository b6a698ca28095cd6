import click

from config.config import DEFAULT_CONFIG_DIR

INPUT_FILE = click.Path(exists=True, dir_okay=False)

COMMON_OPTIONS = [
    click.option('--json', 'json_output', is_flag=True, default=False,
                 help="Print the full JSON report to stdout instead of a human readable summary."),
    click.option('--quiet', is_flag=True, default=False,
                 help="Print nothing to stdout; the exit code carries the verdict."),
    click.option('--output', '-o', type=click.Path(dir_okay=False, writable=True), default=None,
                 help="Also write the JSON report to this file."),
    click.option('--config-dir', '-c', type=str, default=DEFAULT_CONFIG_DIR,
                 help="Directory holding an optional config.yml with budget defaults "
                      "(if your config dir is HOME_DIR/.tcpkit, no need to provide this parameter)."),
    click.option('--grid', 'grid_resolution', type=float, default=None,
                 help="Grid spacing on the unit infinity-sphere, e.g. 0.03125."),
    click.option('--starts', 'multistarts', type=int, default=None,
                 help="Number of multistart local searches."),
    click.option('--tol', 'tolerance', type=float, default=None,
                 help="Acceptance tolerance of every verdict."),
    click.option('--seed', type=int, default=None,
                 help="Seed of every random stream, default 0; equal seeds give identical reports."),
    click.option('--threads', type=int, default=None,
                 help="Worker thread cap (falls back to TCPKIT_THREADS, then config.yml, then the CPU count)."),
]


def common_options(command):
    for option in reversed(COMMON_OPTIONS):
        command = option(command)
    return command
