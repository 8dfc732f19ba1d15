#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""The setup script."""

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()


# 12.10.2026
# numpy carries all the signal processing, scipy provides the Q function and the DCT used to check the waveforms
# pandas writes the result tables and jinja2 renders the default config file
requirements = [
    'Click>=7.0',
    'numpy>=1.17',
    'scipy>=1.4',
    'pandas>=1.0',
    'jinja2>=2.10'
]

setup_requirements = ['pytest-runner', ]

test_requirements = requirements + ['pytest', ]

setup(
    author="Jonas Teufel",
    author_email='jonseb1998@gmail.com',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering',
    ],
    description="Split learning of a DCT activation network over a simulated chirp / FSK radio link",
    entry_points={
        'console_scripts': [
            'splitlora=splitlora.cli:main',
        ],
    },
    install_requires=requirements,
    license="BSD license",
    long_description=readme + '\n\n' + history,
    include_package_data=True,
    package_data={
        'splitlora': ['templates/*.jinja2']
    },
    keywords='splitlora',
    name='splitlora',
    packages=find_packages(include=[
        'splitlora',
        'splitlora.channels'
    ]),
    setup_requires=setup_requirements,
    test_suite='tests',
    tests_require=test_requirements,
    version='0.2.0',
    zip_safe=False
)
