# -*- coding: utf-8 -*-

# brakeorbit
# ----------
# Python library for periodic minimizers of constrained interacting
# agent energies and their mean-field brake orbits.
#
# Author:   sonntagsgesicht
# Version:  0.1, copyright Saturday, 17 October 2026
# Website:  https://github.com/sonntagsgesicht/brakeorbit
# License:  Apache License 2.0 (see LICENSE file)


import ast
import codecs

try:
    from setuptools import setup, find_packages
except ImportError:
    from distutils.core import setup

name = 'brakeorbit'

# read the package dunders without importing numpy and friends
pkg = dict()
with codecs.open(name + '/__init__.py', encoding='utf-8') as f:
    for node in ast.parse(f.read()).body:
        if isinstance(node, ast.Assign) and \
                isinstance(node.targets[0], ast.Name) and \
                node.targets[0].id.startswith('__') and \
                node.targets[0].id != '__url__':
            pkg[node.targets[0].id] = ast.literal_eval(node.value)
pkg['__url__'] = 'https://github.com/sonntagsgesicht/' + name

setup(
    name=name,
    description=pkg['__doc__'],
    version=pkg['__version__'],
    author=pkg['__author__'],
    author_email=pkg['__email__'],
    url=pkg['__url__'],
    license=pkg['__license__'],
    packages=(name,),
    package_data={name: list(pkg['__data__'])},
    scripts=pkg['__scripts__'],
    entry_points=pkg['__entry_points__'],
    install_requires=pkg['__dependencies__'],
    dependency_links=pkg['__dependency_links__'],
    long_description='\n'+codecs.open('README.rst', encoding='utf-8').read(),
    long_description_content_type='text/x-rst',
    platforms='any',
    python_requires='>=3.8',
    classifiers=[
        'Development Status :: ' + pkg['__dev_status__'],
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Topic :: Education',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Physics',
        'Topic :: Software Development :: Libraries :: Python Modules',
    ],
)
