import click

from classify.classification import find_s_witness
from cli.options import INPUT_FILE, common_options
from cli.run_config import RunConfig
from cli.runner import CommandOutcome, EXIT_NEGATIVE, EXIT_SUCCESS, invoke
from tcp.instance import load_instance, TCPSolution
from tcp.solvers import check_pseudomonotone_violation, find_feasible, solve_enumerate, solve_merit, verify_solution
from tensor.io import parse_vector_option

ENUMERATE = 'enumerate'
MERIT = 'merit'
AUTO = 'auto'


def _vector_text(vector) -> str:
    return '[' + ', '.join(f'{value:.6g}' for value in vector) + ']'


def run_solve(run_config: RunConfig) -> CommandOutcome:
    instance = load_instance(run_config.inputs['instance'])
    method = run_config.options['method']
    if method == AUTO:
        method = ENUMERATE if instance.dim <= run_config.enumeration_max_dim else MERIT

    result = {'method': method}
    if method == ENUMERATE:
        solutions = solve_enumerate(instance, run_config.budget, run_config.enumeration_max_dim)
    else:
        outcome = solve_merit(instance, run_config.budget)
        solutions = [outcome] if isinstance(outcome, TCPSolution) else []
        if not solutions:
            result['not_found'] = outcome.to_dict()
    result['solutions'] = [solution.to_dict() for solution in solutions]

    lines = [f'{len(solutions)} solution(s) by {method}']
    lines += [f'  x = {_vector_text(solution.x)}  max residual {solution.residuals.max():.3g}' for solution in solutions]
    return CommandOutcome(EXIT_SUCCESS if solutions else EXIT_NEGATIVE, result, lines)


def run_feasible(run_config: RunConfig) -> CommandOutcome:
    instance = load_instance(run_config.inputs['instance'])
    strict = run_config.options['strict']
    witness_text = run_config.inputs.get('witness')
    result = {'strict': strict}
    if witness_text is not None:
        witness = parse_vector_option(witness_text, instance.dim)
    else:
        s_report = find_s_witness(instance.tensor, run_config.budget)
        result['s_report'] = s_report.to_dict()
        if not s_report.holds:
            result['x'] = None
            return CommandOutcome(EXIT_NEGATIVE, result, [f'No S-witness found ({s_report.verdict})'])
        witness = s_report.witness

    x = find_feasible(instance, witness, strict=strict)
    result['witness'] = [float(value) for value in witness]
    result['x'] = [float(value) for value in x]
    result['w'] = [float(value) for value in instance.slack(x)]
    kind = 'Strictly feasible' if strict else 'Feasible'
    return CommandOutcome(EXIT_SUCCESS, result, [f'{kind} x = {_vector_text(x)}'])


def run_pm_check(run_config: RunConfig) -> CommandOutcome:
    instance = load_instance(run_config.inputs['instance'])
    x = parse_vector_option(run_config.inputs['x'], instance.dim)
    y = parse_vector_option(run_config.inputs['y'], instance.dim)
    check = check_pseudomonotone_violation(instance, x, y)
    result = check.to_dict()
    result['x_is_solution'] = verify_solution(instance, x, run_config.budget.tolerance).verified
    lines = [f'(x-y).F(y) = {check.lhs!r}, (x-y).F(x) = {check.rhs!r}',
             'Pseudo-monotonicity violated' if check.violated else 'No violation at this pair']
    return CommandOutcome(EXIT_SUCCESS, result, lines)


@click.command()
@click.option(
    '--instance', '-i',
    type=INPUT_FILE,
    required=True,
    help="Instance JSON file holding the tensor and q."
)
@click.option(
    '--method', '-m',
    type=click.Choice([AUTO, ENUMERATE, MERIT], case_sensitive=False),
    default=AUTO,
    help="Support enumeration (small dimensions, every solution) or merit minimization (one solution); "
         "auto picks enumeration up to the configured dimension limit."
)
@common_options
def solve(instance, method, **common):
    """Solve the tensor complementarity problem TCP(A, q)."""
    invoke('solve', common, inputs={'instance': instance}, options={'method': method.lower()})


@click.command()
@click.option(
    '--instance', '-i',
    type=INPUT_FILE,
    required=True,
    help="Instance JSON file holding the tensor and q."
)
@click.option(
    '--witness', '-w',
    type=str,
    default=None,
    help="S-witness y > 0 with Ay^(m-1) > 0 as comma separated values; searched for when omitted."
)
@click.option(
    '--strict',
    is_flag=True,
    default=False,
    help="Return a strictly feasible point (x > 0 and q + Ax^(m-1) > 0)."
)
@common_options
def feasible(instance, witness, strict, **common):
    """Scale an S-witness into a feasible point of TCP(A, q)."""
    invoke('feasible', common, inputs={'instance': instance, 'witness': witness}, options={'strict': strict})


@click.command(name='pm-check')
@click.option(
    '--instance', '-i',
    type=INPUT_FILE,
    required=True,
    help="Instance JSON file holding the tensor and q."
)
@click.option('--x', 'x', type=str, required=True, help="First nonnegative point, comma separated.")
@click.option('--y', 'y', type=str, required=True, help="Second nonnegative point, comma separated.")
@common_options
def pm_check(instance, x, y, **common):
    """Check whether F(x) = Ax^(m-1) + q violates pseudo-monotonicity at the pair (x, y)."""
    invoke('pm-check', common, inputs={'instance': instance, 'x': x, 'y': y}, options={})
