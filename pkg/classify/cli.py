import click

from classify.classification import CHECKS, classify_all
from classify.report import TensorClass
from cli.options import INPUT_FILE, common_options
from cli.run_config import RunConfig
from cli.runner import CommandOutcome, EXIT_NEGATIVE, EXIT_SUCCESS, invoke
from tensor.io import load_tensor

CLASS_OPTIONS = {'semi-positive': TensorClass.SEMI_POSITIVE,
                 'strictly-semi-positive': TensorClass.STRICTLY_SEMI_POSITIVE,
                 'p': TensorClass.P,
                 'p0': TensorClass.P0,
                 'copositive': TensorClass.COPOSITIVE,
                 'strictly-copositive': TensorClass.STRICTLY_COPOSITIVE,
                 's': TensorClass.S,
                 's0': TensorClass.S0,
                 'r0': TensorClass.R0}
ALL_CLASSES = 'all'


def _report_line(report) -> str:
    line = f'{report.class_name}: {report.verdict}'
    if report.witness is not None:
        witness = ', '.join(f'{value:.6g}' for value in report.witness)
        line += f' ({report.witness_meaning} [{witness}])'
    return line


def run_classify(run_config: RunConfig) -> CommandOutcome:
    tensor = load_tensor(run_config.inputs['tensor'])
    class_option = run_config.options['class']
    if class_option == ALL_CLASSES:
        summary = classify_all(tensor, run_config.budget)
        lines = [_report_line(report) for report in summary.reports]
        lines += [f'Inconsistent at this budget: {item["premise"]} holds but {item["conclusion"]} is violated'
                  for item in summary.inconsistencies]
        return CommandOutcome(EXIT_SUCCESS if summary.all_hold else EXIT_NEGATIVE, summary.to_dict(), lines)

    report = CHECKS[CLASS_OPTIONS[class_option]](tensor, run_config.budget)
    return CommandOutcome(EXIT_SUCCESS if report.holds else EXIT_NEGATIVE, report.to_dict(), [_report_line(report)])


@click.command()
@click.option(
    '--tensor', '-t',
    type=INPUT_FILE,
    required=True,
    help="Tensor JSON file (order, dim and 1-based entries)."
)
@click.option(
    '--class', 'class_name',
    type=click.Choice(list(CLASS_OPTIONS) + [ALL_CLASSES], case_sensitive=False),
    default=ALL_CLASSES,
    help="Structured class to test, or 'all' to run every test at one budget (default)."
)
@common_options
def classify(tensor, class_name, **common):
    """Budget-relative membership test of a tensor in the structured classes."""
    invoke('classify', common, inputs={'tensor': tensor}, options={'class': class_name.lower()})
