from typing import Optional

import click

from bounds.beta import beta as compute_beta
from bounds.bounds import evaluate_bounds
from bounds.gamma import GammaVerdict, gamma_probe
from classify.classification import check_strictly_semi_positive
from cli.options import INPUT_FILE, common_options
from cli.run_config import RunConfig
from cli.runner import CommandOutcome, EXIT_NEGATIVE, EXIT_SUCCESS, invoke
from pareto.eigen import lambda_min, mu_min
from tcp.instance import TCPSolution, load_instance, load_solutions
from tcp.solvers import solve_enumerate, solve_merit
from tensor.io import load_tensor
from utils.log import get_logger

logger = get_logger(__name__)


def run_beta(run_config: RunConfig) -> CommandOutcome:
    tensor = load_tensor(run_config.inputs['tensor'])
    result = compute_beta(tensor, run_config.budget)
    vector = ', '.join(f'{value:.6g}' for value in result.vector)
    lines = [f'beta = {result.value!r} at [{vector}]']
    return CommandOutcome(EXIT_SUCCESS if result.value > 0 else EXIT_NEGATIVE, result.to_dict(), lines)


def _computed_constant(name: str, value: float, skipped: list) -> Optional[float]:
    if value > 0:
        return value
    skipped.append({'constant': name, 'value': float(value), 'reason': 'computed constant is not positive'})
    return None


def run_bounds(run_config: RunConfig) -> CommandOutcome:
    instance = load_instance(run_config.inputs['instance'])
    tensor, budget = instance.tensor, run_config.budget
    symmetric = tensor.is_symmetric()
    semi_positive_report = check_strictly_semi_positive(tensor, budget)
    if not semi_positive_report.holds:
        logger.warning('Tensor is not strictly semi-positive at this budget; the bounds are not guaranteed')

    constants = {'lambda': run_config.options['lambda'],
                 'mu': run_config.options['mu'],
                 'beta': run_config.options['beta']}
    computed, skipped = [], []
    if not symmetric:
        for name in ('lambda', 'mu'):
            skipped.append({'constant': name, 'value': constants[name], 'reason': 'tensor is not symmetric'})
            constants[name] = None
    else:
        if constants['lambda'] is None:
            constants['lambda'] = _computed_constant('lambda', lambda_min(tensor, budget).value, skipped)
            computed.append('lambda')
        if constants['mu'] is None:
            constants['mu'] = _computed_constant('mu', mu_min(tensor, budget).value, skipped)
            computed.append('mu')
    if constants['beta'] is None:
        constants['beta'] = _computed_constant('beta', compute_beta(tensor, budget).value, skipped)
        computed.append('beta')

    solutions_path = run_config.inputs.get('solutions')
    if solutions_path is not None:
        solutions = load_solutions(solutions_path, instance.dim)
    elif instance.dim <= run_config.enumeration_max_dim:
        solutions = [solution.x for solution in solve_enumerate(instance, budget, run_config.enumeration_max_dim)]
    else:
        outcome = solve_merit(instance, budget)
        solutions = [outcome.x] if isinstance(outcome, TCPSolution) else []

    reports = evaluate_bounds(instance, solutions, constants['lambda'], constants['mu'], constants['beta'])
    result = {'preconditions': {'symmetric': symmetric,
                                'strictly_semi_positive': semi_positive_report.verdict},
              'constants': {'lambda': constants['lambda'], 'mu': constants['mu'], 'beta': constants['beta'],
                            'computed': computed},
              'skipped': skipped,
              'solutions': [[float(value) for value in x] for x in solutions],
              'reports': [report.to_dict() for report in reports]}

    lines = [f'{len(solutions)} solution(s), symmetric={symmetric}, '
             f'strictly semi-positive: {semi_positive_report.verdict}']
    lines += [f'  {report.kind}: {report.lhs:.6g} <= {report.rhs:.6g} '
              f'{"satisfied" if report.satisfied else "VIOLATED"}' for report in reports]
    lines += [f'  skipped {item["constant"]}: {item["reason"]}' for item in skipped]
    exit_code = EXIT_SUCCESS if all(report.satisfied for report in reports) else EXIT_NEGATIVE
    return CommandOutcome(exit_code, result, lines)


def run_gamma(run_config: RunConfig) -> CommandOutcome:
    instance = load_instance(run_config.inputs['instance'])
    options = run_config.options
    probe = gamma_probe(instance.tensor, instance.q, options['s'], options['t'], run_config.budget)
    lines = [f'Gamma(q, {options["s"]!r}, {options["t"]!r}): {probe.verdict}, '
             f'{len(probe.members_found)} member(s), largest norm {probe.largest_member_norm:.6g}']
    if probe.escape_direction is not None:
        lines.append('  escape direction [' + ', '.join(f'{value:.6g}' for value in probe.escape_direction) + ']')
    exit_code = EXIT_SUCCESS if probe.verdict == GammaVerdict.LIKELY_BOUNDED else EXIT_NEGATIVE
    return CommandOutcome(exit_code, probe.to_dict(), lines)


@click.command()
@click.option(
    '--tensor', '-t',
    type=INPUT_FILE,
    required=True,
    help="Tensor JSON file (order, dim and 1-based entries)."
)
@common_options
def beta(tensor, **common):
    """Compute beta(A), the minimax of x_i (Ax^(m-1))_i over the nonnegative infinity-sphere."""
    invoke('beta', common, inputs={'tensor': tensor}, options={})


@click.command()
@click.option(
    '--instance', '-i',
    type=INPUT_FILE,
    required=True,
    help="Instance JSON file holding the tensor and q."
)
@click.option(
    '--solutions',
    type=INPUT_FILE,
    default=None,
    help="JSON list of solution vectors (or serialized solutions); solved for when omitted."
)
@click.option('--lambda', 'lambda_val', type=float, default=None,
              help="lambda(A) for the m-norm bound; computed when omitted.")
@click.option('--mu', 'mu_val', type=float, default=None,
              help="mu(A) for the 2-norm bound; computed when omitted.")
@click.option('--beta', 'beta_val', type=float, default=None,
              help="beta(A) for the infinity-norm bound; computed when omitted.")
@common_options
def bounds(instance, solutions, lambda_val, mu_val, beta_val, **common):
    """Evaluate the global upper bounds on TCP solutions."""
    invoke('bounds', common, inputs={'instance': instance, 'solutions': solutions},
           options={'lambda': lambda_val, 'mu': mu_val, 'beta': beta_val})


@click.command()
@click.option(
    '--instance', '-i',
    type=INPUT_FILE,
    required=True,
    help="Instance JSON file holding the tensor and q."
)
@click.option('--s', 's', type=float, default=0.0, help="Level s of Gamma(q, s, t), default 0.")
@click.option('--t', 't', type=float, default=1.0, help="Weight t > 0 of Gamma(q, s, t), default 1.")
@common_options
def gamma(instance, s, t, **common):
    """Probe whether Gamma(q, s, t) is bounded, searching for an escape direction."""
    invoke('gamma', common, inputs={'instance': instance}, options={'s': s, 't': t})
