#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# setup.py - Setup file for the gaussriesz package
#

from os.path import dirname, join

from setuptools import setup


def read(*args):
    return open(join(dirname(__file__), *args)).read()

scripts = []
for name, mod, *extras in [
        ('gaussriesz-verify', "verify.cli"),
    ]:
    spec = "{} = gaussriesz.{}:main".format(name, mod)

    if extras:
        spec += " [{}]".format(",".join(extras))

    scripts.append(spec)

classifiers = """\
Development Status :: 3 - Alpha
Environment :: Console
Intended Audience :: Science/Research
Operating System :: OS Independent
License :: OSI Approved :: MIT License
Programming Language :: Python
Programming Language :: Python :: 3 :: Only
Programming Language :: Python :: 3.9
Programming Language :: Python :: 3.10
Programming Language :: Python :: 3.11
Topic :: Scientific/Engineering :: Mathematics
"""

setup(
    name='gaussriesz',
    version="0.1.0",
    description="Numerical toolkit and verification harness for Gaussian Riesz potentials "
                "on variable Lebesgue spaces",
    long_description=read('README.md'),
    long_description_content_type="text/markdown",
    license='MIT License',
    keywords="hermite,ornstein-uhlenbeck,riesz potential,variable lebesgue,gaussian measure",
    classifiers=[c.strip() for c in classifiers.splitlines() if not c.startswith('#')],
    packages=[
        'gaussriesz',
        'gaussriesz.bounds',
        'gaussriesz.geometry',
        'gaussriesz.hermite',
        'gaussriesz.riesz',
        'gaussriesz.semigroup',
        'gaussriesz.varlp',
        'gaussriesz.verify',
    ],
    package_dir={'gaussriesz': ''},
    include_package_data=True,
    install_requires=[
        "numpy >= 1.22",
        "scipy >= 1.8",
        "pydantic >= 2.0",
    ],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    python_requires='>=3.9',
    entry_points={
        'console_scripts': scripts
    },
    zip_safe=False,
)
