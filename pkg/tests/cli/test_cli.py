import json
import os
from unittest import mock

import pytest
from click.testing import CliRunner

from cli.cli import cli
from cli.runner import EXIT_ERROR, EXIT_NEGATIVE, EXIT_SUCCESS
from conftest import EXAMPLE_Q, EXAMPLE_SOLUTIONS
from tcp.instance import TCPInstance, serialize_instance
from tensor.io import serialize_tensor
from tensor.tensor import Tensor
from utils.ordered_yaml import OrderedYaml

FAST_OPTIONS = ['--grid', '0.0625', '--starts', '16']


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def write_file(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


@pytest.fixture
def example_tensor_file(write_file, example_tensor):
    return write_file('example_tensor.json', serialize_tensor(example_tensor))


@pytest.fixture
def example_instance_file(write_file, example_tensor):
    return write_file('example_instance.json', serialize_instance(TCPInstance(example_tensor, EXAMPLE_Q)))


@pytest.fixture
def identity_instance_file(write_file):
    return write_file('identity_instance.json', serialize_instance(TCPInstance(Tensor.identity(3, 2), [-1.0, -4.0])))


def run_json(runner, args):
    result = runner.invoke(cli, args + ['--json'] + FAST_OPTIONS)
    return result, json.loads(result.output) if result.output.strip() else None


def test_help_shows_banner_and_commands(runner):
    result = runner.invoke(cli, ['--help'])
    assert result.exit_code == 0
    for command in ['classify', 'solve', 'pareto', 'beta', 'bounds', 'feasible', 'gamma', 'pm-check']:
        assert command in result.output


def test_classify_single_class(runner, example_tensor_file):
    result, report = run_json(runner, ['classify', '-t', example_tensor_file, '--class', 'strictly-semi-positive'])
    assert result.exit_code == EXIT_SUCCESS
    assert report['result']['verdict'] == 'Holds'
    assert report['config']['command'] == 'classify'
    assert report['config']['budget']['multistarts'] == 16
    assert set(report['timing']) == {'started_at', 'elapsed_ms'}


def test_classify_violated_class_exits_negative(runner, write_file):
    path = write_file('zero.json', serialize_tensor(Tensor.zeros(3, 2)))
    result, report = run_json(runner, ['classify', '-t', path, '--class', 'r0'])
    assert result.exit_code == EXIT_NEGATIVE
    assert report['result']['verdict'] == 'Violated'
    assert report['result']['witness_meaning'] == 'ViolatingVector'


def test_solve_enumerate_lists_every_solution(runner, example_instance_file):
    result, report = run_json(runner, ['solve', '-i', example_instance_file, '--method', 'enumerate'])
    assert result.exit_code == EXIT_SUCCESS
    solutions = [solution['x'] for solution in report['result']['solutions']]
    assert len(solutions) == 3
    for solution, expected in zip(solutions, EXAMPLE_SOLUTIONS):
        assert solution == pytest.approx(expected, abs=1e-5)


def test_solve_auto_uses_merit_above_enumeration_limit(runner, write_file):
    path = write_file('big.json', serialize_instance(TCPInstance(Tensor.identity(3, 5), [-1.0] * 5)))
    result, report = run_json(runner, ['solve', '-i', path])
    assert result.exit_code == EXIT_SUCCESS
    assert report['result']['method'] == 'merit'
    assert report['result']['solutions'][0]['x'] == pytest.approx([1.0] * 5, abs=1e-6)


def test_pm_check_reports_violation(runner, example_instance_file):
    result, report = run_json(runner, ['pm-check', '-i', example_instance_file, '--x', '1,0', '--y', '1,1'])
    assert result.exit_code == EXIT_SUCCESS
    assert report['result']['lhs'] == pytest.approx(0.5)
    assert report['result']['rhs'] == pytest.approx(-0.5)
    assert report['result']['violated'] is True
    assert report['result']['x_is_solution'] is False


def test_pm_check_rejects_negative_point(runner, example_instance_file):
    result = runner.invoke(cli, ['pm-check', '-i', example_instance_file, '--x', '-1,0', '--y', '1,1'])
    assert result.exit_code == EXIT_ERROR


def test_feasible_with_explicit_witness(runner, identity_instance_file):
    result, report = run_json(runner, ['feasible', '-i', identity_instance_file, '--witness', '1,1'])
    assert result.exit_code == EXIT_SUCCESS
    assert report['result']['x'] == pytest.approx([2.0, 2.0])
    assert min(report['result']['w']) >= 0


def test_feasible_searches_witness(runner, identity_instance_file):
    result, report = run_json(runner, ['feasible', '-i', identity_instance_file, '--strict'])
    assert result.exit_code == EXIT_SUCCESS
    assert report['result']['s_report']['verdict'] == 'Holds'
    assert min(report['result']['x']) > 0


def test_pareto_on_identity(runner, write_file):
    path = write_file('identity.json', serialize_tensor(Tensor.identity(3, 2)))
    result, report = run_json(runner, ['pareto', '-t', path])
    assert result.exit_code == EXIT_SUCCESS
    assert report['result']['H']['value'] == pytest.approx(1.0, abs=1e-6)
    assert report['result']['Z']['value'] == pytest.approx(2 ** -0.5, abs=1e-6)


def test_beta_on_example(runner, example_tensor_file):
    result, report = run_json(runner, ['beta', '-t', example_tensor_file])
    assert result.exit_code == EXIT_SUCCESS
    assert report['result']['value'] == pytest.approx(0.4081, abs=1e-3)


def test_bounds_on_identity_instance(runner, identity_instance_file):
    result, report = run_json(runner, ['bounds', '-i', identity_instance_file])
    assert result.exit_code == EXIT_SUCCESS
    reports = report['result']['reports']
    assert [item['kind'] for item in reports] == ['MNorm', 'TwoNorm', 'InfNorm']
    assert all(item['satisfied'] for item in reports)


def test_bounds_with_solutions_file_and_constants(runner, identity_instance_file, write_file):
    solutions = write_file('solutions.json', json.dumps([[1.0, 2.0]]))
    result, report = run_json(runner, ['bounds', '-i', identity_instance_file, '--solutions', solutions,
                                       '--beta', '1.0', '--lambda', '1.0'])
    assert result.exit_code == EXIT_SUCCESS
    assert report['result']['constants']['beta'] == 1.0
    assert report['result']['solutions'] == [[1.0, 2.0]]


def test_gamma_on_example(runner, example_instance_file):
    result, report = run_json(runner, ['gamma', '-i', example_instance_file])
    assert result.exit_code == EXIT_SUCCESS
    assert report['result']['verdict'] == 'LikelyBounded'


def test_gamma_on_zero_tensor_exits_negative(runner, write_file):
    path = write_file('zero_instance.json', serialize_instance(TCPInstance(Tensor.zeros(3, 2), [0.0, 0.0])))
    result, report = run_json(runner, ['gamma', '-i', path])
    assert result.exit_code == EXIT_NEGATIVE
    assert report['result']['verdict'] == 'UnboundedWitness'


@pytest.mark.parametrize("text", [
    'not json',
    '{"order": 3, "dim": 2, "entries": [{"idx": [1, 1, 3], "val": 1.0}]}',
    '{"order": 3, "dim": 2, "entries": [{"idx": [1, 1], "val": 1.0}]}',
])
def test_malformed_tensor_file_exits_with_error(runner, write_file, text):
    path = write_file('bad.json', text)
    result = runner.invoke(cli, ['classify', '-t', path])
    assert result.exit_code == EXIT_ERROR
    assert 'Error' in result.output


def test_dimension_mismatch_in_instance_exits_with_error(runner, write_file, example_tensor):
    document = TCPInstance(example_tensor, EXAMPLE_Q).to_dict()
    document['q'] = [1.0, 2.0, 3.0]
    path = write_file('mismatch.json', json.dumps(document))
    result = runner.invoke(cli, ['solve', '-i', path])
    assert result.exit_code == EXIT_ERROR


def test_missing_input_file_is_a_usage_error(runner):
    result = runner.invoke(cli, ['beta', '-t', 'no_such_tensor.json'])
    assert result.exit_code == EXIT_ERROR


def test_invalid_budget_option_exits_with_error(runner, example_tensor_file):
    result = runner.invoke(cli, ['beta', '-t', example_tensor_file, '--starts', '0'])
    assert result.exit_code == EXIT_ERROR


def test_reports_are_deterministic(runner, example_instance_file):
    args = ['solve', '-i', example_instance_file, '--method', 'merit', '--seed', '5']
    _, first = run_json(runner, args)
    _, second = run_json(runner, args + ['--threads', '3'])
    first.pop('timing')
    second.pop('timing')
    first['config'].pop('threads')
    second['config'].pop('threads')
    assert first == second


def _replay_args(name, example_tensor_file, example_instance_file, identity_instance_file):
    return {'classify': ['classify', '-t', example_tensor_file],
            'solve': ['solve', '-i', example_instance_file, '--method', 'merit'],
            'feasible': ['feasible', '-i', identity_instance_file, '--strict'],
            'pm-check': ['pm-check', '-i', example_instance_file, '--x', '1,0', '--y', '1,1'],
            'pareto': ['pareto', '-t', example_tensor_file],
            'beta': ['beta', '-t', example_tensor_file],
            'bounds': ['bounds', '-i', identity_instance_file],
            'gamma': ['gamma', '-i', example_instance_file]}[name]


def _report_text_without_timing(path: str) -> str:
    with open(path) as report_file:
        report = json.load(report_file)
    report.pop('timing')
    return json.dumps(report, indent=2)


@pytest.mark.parametrize("name", ['classify', 'solve', 'feasible', 'pm-check', 'pareto', 'beta', 'bounds', 'gamma'])
def test_replay_gives_identical_report_text(runner, tmp_path, name, example_tensor_file, example_instance_file,
                                            identity_instance_file):
    args = _replay_args(name, example_tensor_file, example_instance_file, identity_instance_file)
    args = args + ['--quiet', '--seed', '11'] + FAST_OPTIONS
    first_path, second_path = str(tmp_path / 'first.json'), str(tmp_path / 'second.json')
    first = runner.invoke(cli, args + ['-o', first_path])
    second = runner.invoke(cli, args + ['-o', second_path])
    assert first.exit_code == second.exit_code
    assert first.exit_code != EXIT_ERROR
    assert _report_text_without_timing(first_path) == _report_text_without_timing(second_path)


@pytest.mark.parametrize("command", ['classify', 'bounds'])
def test_false_symmetry_claim_exits_with_error(runner, write_file, example_tensor, command):
    tensor_document = json.loads(serialize_tensor(example_tensor))
    tensor_document['symmetric'] = True
    if command == 'bounds':
        path = write_file('false_claim.json', json.dumps({'tensor': tensor_document, 'q': EXAMPLE_Q}))
        args = ['bounds', '-i', path]
    else:
        path = write_file('false_claim.json', json.dumps(tensor_document))
        args = ['classify', '-t', path]
    result = runner.invoke(cli, args + FAST_OPTIONS)
    assert result.exit_code == EXIT_ERROR
    assert 'symmetric' in result.output


def test_quiet_prints_nothing(runner, example_tensor_file):
    result = runner.invoke(cli, ['classify', '-t', example_tensor_file, '--class', 's', '--quiet'] + FAST_OPTIONS)
    assert result.exit_code == EXIT_SUCCESS
    assert result.output == ''


def test_human_summary_and_output_file(runner, example_tensor_file, tmp_path):
    output = str(tmp_path / 'report.json')
    with mock.patch('cli.runner.ThreadSpinner'):
        result = runner.invoke(cli, ['beta', '-t', example_tensor_file, '-o', output] + FAST_OPTIONS)
    assert result.exit_code == EXIT_SUCCESS
    assert result.output.startswith('beta = ')
    assert 'Elapsed:' in result.output
    with open(output) as report_file:
        assert json.load(report_file)['config']['command'] == 'beta'


def test_config_dir_supplies_budget(runner, example_tensor_file, tmp_path):
    OrderedYaml().dump({'budget': {'multistarts': 8, 'seed': 3}, 'enumeration_max_dim': 3},
                       os.path.join(str(tmp_path), 'config.yml'))
    result = runner.invoke(cli, ['beta', '-t', example_tensor_file, '--json', '-c', str(tmp_path)])
    report = json.loads(result.output)
    assert report['config']['budget']['multistarts'] == 8
    assert report['config']['budget']['seed'] == 3
    assert report['config']['enumeration_max_dim'] == 3


def test_invalid_thread_environment_exits_with_error(runner, example_tensor_file):
    with mock.patch.dict('os.environ', {'TCPKIT_THREADS': 'many'}):
        result = runner.invoke(cli, ['beta', '-t', example_tensor_file, '--json'])
    assert result.exit_code == EXIT_ERROR
