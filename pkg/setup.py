#!/usr/bin/env python

import glob
import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

with open("LICENSE.md", "r") as fh:
    long_license = fh.read()

bin_files = glob.glob("bin/*")

setuptools.setup(name='COMETSim',
                 version='1.0.0',
                 description='COMET photonic phase-change main memory model',
                 long_description=long_description,
                 long_description_content_type="text/markdown",
                 license=long_license,
                 classifiers=['Programming Language :: Python :: 3',
                              'Operating System :: OS Independent'
                             ],
                 packages=['pcmmisc',
                           'pcmconfig',
                           'comet',
                           'cosmos'],
                 package_dir={'': 'python'},
                 scripts=bin_files,
                 data_files=[('etc', glob.glob("etc/*"))],
                 python_requires='>=3.8',
                 install_requires=['numpy>=1.17',
                                   'scipy>=1.3',
                                   'python-dateutil>=2.8',
                                   'psutil>=5.6',
                                   'astropy>=4.0'],
                 extras_require={'test': ['pytest>=6.0',
                                          'hypothesis>=5.0']})
