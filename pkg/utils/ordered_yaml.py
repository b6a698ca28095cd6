from ruamel.yaml import YAML, YAMLError

from exceptions.exceptions import ConfigError


class OrderedYaml(object):
    """Round-trip YAML: key order and comments of a hand-edited config.yml survive a dump."""

    def __init__(self) -> None:
        self.ordered_yaml = YAML()
        self.ordered_yaml.indent(mapping=2, sequence=4, offset=2)
        self.ordered_yaml.preserve_quotes = True

    def load(self, file_path: str):
        try:
            with open(file_path, 'r') as file_obj:
                return self.ordered_yaml.load(file_obj)
        except YAMLError as exc:
            raise ConfigError(f'Malformed YAML in {file_path} - {exc}')
        except OSError as exc:
            raise ConfigError(f'Could not read {file_path} - {exc.strerror}')

    def dump(self, data: dict, file_path: str) -> None:
        with open(file_path, 'w') as file_obj:
            self.ordered_yaml.dump(data, file_obj)
