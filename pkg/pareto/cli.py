import click

from cli.options import INPUT_FILE, common_options
from cli.run_config import RunConfig
from cli.runner import CommandOutcome, EXIT_NEGATIVE, EXIT_SUCCESS, invoke
from pareto.eigen import ParetoKind, lambda_min, mu_min
from tensor.io import load_tensor

BOTH = 'both'
SOLVERS = {ParetoKind.H: lambda_min, ParetoKind.Z: mu_min}


def run_pareto(run_config: RunConfig) -> CommandOutcome:
    tensor = load_tensor(run_config.inputs['tensor'])
    kind = run_config.options['kind']
    kinds = [ParetoKind.H, ParetoKind.Z] if kind == BOTH else [kind]

    pairs = {name: SOLVERS[name](tensor, run_config.budget) for name in kinds}
    lines = []
    for name, pair in pairs.items():
        vector = ', '.join(f'{value:.6g}' for value in pair.vector)
        status = 'verified' if pair.verified else f'unverified (residual {pair.residuals.max_residual:.3g})'
        lines.append(f'Pareto {name}-eigenvalue {pair.value!r} at [{vector}], {status}')
        if not pair.symmetric_input:
            lines.append('  tensor is not symmetric; the value is the constrained minimum only')

    exit_code = EXIT_SUCCESS if all(pair.verified for pair in pairs.values()) else EXIT_NEGATIVE
    return CommandOutcome(exit_code, {name: pair.to_dict() for name, pair in pairs.items()}, lines)


@click.command()
@click.option(
    '--tensor', '-t',
    type=INPUT_FILE,
    required=True,
    help="Tensor JSON file (order, dim and 1-based entries)."
)
@click.option(
    '--kind', '-k',
    type=click.Choice([ParetoKind.H, ParetoKind.Z, BOTH], case_sensitive=False),
    default=BOTH,
    help="Smallest Pareto H-eigenvalue (lambda), Z-eigenvalue (mu) or both."
)
@common_options
def pareto(tensor, kind, **common):
    """Smallest Pareto H- and Z-eigenvalues of a symmetric tensor."""
    kind = kind.upper() if kind.lower() != BOTH else BOTH
    invoke('pareto', common, inputs={'tensor': tensor}, options={'kind': kind})
