#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages


requirements = [
    'numpy',
    'pandas',
    'scipy'
]

test_requirements = [
    'pytest',
    'pytest-console-scripts'
]


long_desc = """
Deterministic simulation of truck-trailer HAV swarms steered by context maps,
with batch experiments over swarm sizes and collision densities.
"""


setup(
    name='pyHavSwarm',
    version='0.1.0',
    description='Simulation of truck-trailer HAV swarms steered by context maps',
    long_description=long_desc,
    author="pyHavSwarm developers",
    author_email='pyhavswarm@users.noreply.github.com',
    entry_points={
        'console_scripts': [
            'pyHavSwarm = pyHavSwarm.__main__:main'
        ]
    },
    packages=find_packages(exclude=['tests']),
    package_dir={'pyHavSwarm':
                 'pyHavSwarm'},
    package_data={'pyHavSwarm': ['database/*.json']},
    include_package_data=True,
    install_requires=requirements,
    license="MIT license",
    zip_safe=False,
    keywords='pyHavSwarm',
    classifiers=[
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8'
    ],
    test_suite='tests',
    tests_require=test_requirements
)
