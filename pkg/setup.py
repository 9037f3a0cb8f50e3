#!/usr/bin/env python
# -*- coding: utf-8 -*-

import re
from os.path import dirname, join

from setuptools import find_packages, setup

with open(join(dirname(__file__), "kitaev", "__init__.py"), "r") as f:
    version = re.search(r'__version__ = "(.*?)"', f.read()).group(1)

install_requires = ["ply>=3.4,<4.0", "jinja2>=2.11", "numpy>=1.22", "scipy>=1.8"]

dev_requires = ["flake8>=2.5", "pytest>=2.8"]

setup(
    name="kitaevtools",
    version=version,
    description="Circuit complexity of Kitaev chains and p+ip superconductors",
    keywords="kitaev complexity topological phase transition",
    packages=find_packages(exclude=["docs", "tests"]),
    package_data={"templates": ["*.j2"]},
    include_package_data=True,
    entry_points={"console_scripts": ["kcx=bin.kcx:main"]},
    license="MIT",
    zip_safe=False,
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    python_requires=">=3.8",
    install_requires=install_requires,
    extras_require={"dev": dev_requires},
    classifiers=[
        "Topic :: Scientific/Engineering :: Physics",
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: Implementation :: CPython",
    ],
)
