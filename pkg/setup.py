"""
Script used to pip install src as a standalone package.
Necessary for package imports between sibling directories.

Run "pip install -e ." in the root directory (i.e. restricted-lotto) to install src
and the restricted-lotto command.
"""

from setuptools import setup, find_packages

setup(
    name='src',
    version='1.0',
    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),
    python_requires='>=3.9',
    install_requires=[
        'matplotlib>=3.5.2',
        'numpy>=1.22.3',
        'pandas>=1.4.2',
        'scipy>=1.9.1',
        'tqdm>=4.64.0',
    ],
    extras_require={'test': ['pytest>=7.1.2']},
    entry_points={'console_scripts': ['restricted-lotto=src.lotto_cli.main:main']},
)
