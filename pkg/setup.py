#!/usr/bin/env python

import sys
from setuptools import setup


version = tuple(sys.version_info[:2])

if version < (3, 7):
    sys.exit('Sorry, Python < 3.7 is not supported')

requires = ['ordered-set>=4.0.1']

packages = ['pybfo',
            'pybfo.resources',
            'pybfo.corpus']

setup(
    name='pybfo',
    version='0.1.0',
    description=('Grounding of realizable entities (dispositions and roles) '
                 'over Basic Formal Ontology worlds'),
    long_description=open('README.rst').read(),
    keywords='ontology BFO disposition role grounding validation',
    packages=packages,
    package_data={'': ['README.rst'],
                  'pybfo.corpus': ['*.bfo', '*.json']},
    include_package_data=True,
    install_requires=requires,
    tests_require=['pytest', 'hypothesis'],
    entry_points={
        'console_scripts': ['pybfo=pybfo.cli:main'],
    },
    python_requires='>=3.7',
    license='BSD 3-Clause',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Operating System :: OS Independent',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Information Analysis',
        'License :: OSI Approved :: BSD License',
    ]
)
