#!/usr/bin/env python
"""aerial_kpi - air-to-ground cellular kpi modeling"""
import setuptools

__author__ = "aerial_kpi contributors"

with open("README.md", "r", encoding="utf-8") as f:
    README = f.read()

with open("requirements.txt", "r") as f:
    INSTALL_REQUIRES = f.read().splitlines()

setuptools.setup(
    name="aerial_kpi",
    version="2026.10.19",
    author=__author__,
    description="Free-space and data-driven 5G KPI models for UAV air-to-ground links",
    long_description=README,
    long_description_content_type="text/markdown",
    license="MIT",
    packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
    package_data={"aerial_kpi": ["resources/*.csv", "resources/*.json"]},
    install_requires=INSTALL_REQUIRES,
    dependency_links=[],
    extras_require={},
    entry_points={"console_scripts": ["aerial-kpi=aerial_kpi.cli:main"]},
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Operating System :: POSIX :: Linux",
        "Operating System :: MacOS",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3 :: Only",
        "Topic :: Scientific/Engineering",
    ],
    python_requires=">=3.8",
)
