from typing import Optional

from config.config import Config
from search.budget import SearchBudget
from utils.package import get_package_version


class RunConfig(object):
    """Everything that determines a report: command, inputs, command options and the effective budget."""

    def __init__(self, command: str, inputs: dict, options: dict, budget: SearchBudget, enumeration_max_dim: int,
                 output: Optional[str] = None, json_output: bool = False, quiet: bool = False) -> None:
        self.command = command
        self.inputs = inputs
        self.options = options
        self.budget = budget
        self.enumeration_max_dim = enumeration_max_dim
        self.output = output
        self.json_output = json_output
        self.quiet = quiet

    @property
    def threads(self) -> Optional[int]:
        return self.budget.threads

    @property
    def human(self) -> bool:
        return not self.json_output and not self.quiet

    @staticmethod
    def create(command: str, common: dict, inputs: dict, options: dict) -> 'RunConfig':
        config = Config(common.get('config_dir'))
        budget = config.search_budget(threads=common.get('threads'),
                                      grid_resolution=common.get('grid_resolution'),
                                      multistarts=common.get('multistarts'),
                                      tolerance=common.get('tolerance'),
                                      seed=common.get('seed'))
        return RunConfig(command, inputs, options, budget, config.enumeration_max_dim,
                         output=common.get('output'),
                         json_output=bool(common.get('json_output')),
                         quiet=bool(common.get('quiet')))

    def to_dict(self) -> dict:
        return {'command': self.command,
                'inputs': self.inputs,
                'options': self.options,
                'budget': self.budget.to_dict(),
                'threads': self.threads,
                'enumeration_max_dim': self.enumeration_max_dim,
                'version': get_package_version()}
