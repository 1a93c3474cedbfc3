#!/usr/bin/env python

from setuptools import setup, find_packages

# read the contents of your README file
with open('README.md') as f:
    long_description = f.read()

setup(
    name='wltl',
    long_description=long_description,
    long_description_content_type='text/markdown',
    version="0.1.0",
    packages=find_packages(include=["wltl*"]),
    description='Weighted LTL over ordered valuation monoids and weighted Büchi automata: evaluation, translation, '
                'threshold automata and decision procedures',
    install_requires=['appdirs==1.4.3', 'pandas', 'lark>=1.1', 'networkx>=2.5'],
    python_requires='>=3.8',
    entry_points={'console_scripts': ['wltl=wltl.cli:main']},
    license="Apache 2.0"
)
