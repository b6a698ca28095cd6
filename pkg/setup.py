from setuptools import setup, find_packages
import pathlib

# The directory containing this file
HERE = pathlib.Path(__file__).parent

# The text of the README file
README = (HERE / "README.md").read_text()

setup(
    name='tcpkit',
    description='Tensor complementarity problems: structured tensor classes, Pareto eigenvalues, solvers and '
                'global solution bounds',
    version='0.1.0',
    packages=find_packages(exclude=['tests', 'tests.*']),
    python_requires='>=3.8',
    entry_points='''
        [console_scripts]
        tcpkit=cli.cli:cli
    ''',
    keyword="tensor, complementarity, tensor complementarity problem, copositive tensor, semi-positive tensor, "
            "Pareto eigenvalue, nonlinear complementarity",
    long_description=README,
    install_requires=[
        'click>=8,<9',
        'pyfiglet',
        'alive-progress',
        'python-dateutil>=2.7.2,<3.0.0',
        'ruamel.yaml',
        'numpy>=1.17',
        'scipy>=1.5',
    ],
    long_description_content_type="text/markdown",
    license='',
    classifiers=[
        'License :: OSI Approved :: Apache Software License',

        'Operating System :: Microsoft :: Windows',
        'Operating System :: MacOS :: MacOS X',
        'Operating System :: POSIX :: Linux',

        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
    ],
)
