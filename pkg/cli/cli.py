import importlib

import click
from pyfiglet import Figlet

# command name -> (module, click command attribute), imported only when the command is used
COMMANDS = {'classify': ('classify.cli', 'classify'),
            'solve': ('tcp.cli', 'solve'),
            'pareto': ('pareto.cli', 'pareto'),
            'beta': ('bounds.cli', 'beta'),
            'bounds': ('bounds.cli', 'bounds'),
            'feasible': ('tcp.cli', 'feasible'),
            'gamma': ('bounds.cli', 'gamma'),
            'pm-check': ('tcp.cli', 'pm_check')}


class TcpkitCLI(click.MultiCommand):

    def list_commands(self, ctx):
        return sorted(COMMANDS)

    def get_command(self, ctx, name):
        if name not in COMMANDS:
            return None
        module_name, attribute = COMMANDS[name]
        return getattr(importlib.import_module(module_name), attribute)

    def format_help(self, ctx, formatter):
        formatter.write(Figlet(font='slant').renderText('tcpkit'))
        self.format_usage(ctx, formatter)
        self.format_help_text(ctx, formatter)
        self.format_options(ctx, formatter)
        self.format_epilog(ctx, formatter)


cli = TcpkitCLI(help='Tensor complementarity problems: structured classes, Pareto eigenvalues, '
                     'solvers and global solution bounds.')

if __name__ == '__main__':
    cli()
