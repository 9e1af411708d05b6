#!/usr/bin/env python
# -*- coding: utf-8 -*-


try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup


with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read().replace('.. :changelog:', '')

requirements = [
    'networkx>=2.0',
]

test_requirements = [
    'sphinx_rtd_theme',
    'mock',
    'hypothesis',
]

setup(
    name='fincat',
    version='0.1.0',
    description="Exact homotopy invariants and fibrations of finite "
                "categories.",
    long_description=readme + '\n\n' + history,
    author="The fincat developers",
    packages=[
        'fincat',
        'fincat.categories',
    ],
    package_dir={'fincat':
                 'fincat'},
    include_package_data=True,
    install_requires=requirements,
    license="Apache 2",
    zip_safe=False,
    keywords='fincat category homotopy fibration',
    entry_points={
        'console_scripts': [
            'fincat=fincat.cli:main',
        ],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'Topic :: Scientific/Engineering :: Mathematics',
        "Programming Language :: Python :: 3",
        'Programming Language :: Python :: 3.6',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
    ],
    test_suite='tests',
    tests_require=test_requirements
)
