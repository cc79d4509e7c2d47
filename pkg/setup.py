#! /usr/bin/env python
# -*- coding: utf-8 -*-
# Copyright 2026 The otcsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import setuptools


with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name='otcsim',
    version='0.1.0',
    author='The otcsim Authors',
    description='Density-matrix simulator for closed and open timelike curves and their protocols',
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='Apache',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics'
    ],
    python_requires='>=3.6',
    packages=setuptools.find_packages(exclude=['tests', 'tests.*']),
    install_requires=[
        'Click>=6.7',
        'numpy>=1.17',
        'scipy>=1.4'
    ],
    entry_points={
        'console_scripts': [
            'otcsim=otcsim.otcsimcli:cli',
        ]},
    data_files=[('/etc/otcsim', ['otcsim-example.ini'])]
)
