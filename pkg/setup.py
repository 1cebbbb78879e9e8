"""Setup file for the dynamic-community-benchmark package."""

from setuptools import find_packages, setup

setup(
    name="dynamic-community-benchmark",
    packages=find_packages(),
    install_requires=[
        "python-dotenv",
        "dask[distributed]",
        "pyyaml",
        "tqdm",
        "click",
        "networkx",
        "numpy",
        "scipy",
        "scikit-learn",
        "pandas",
    ],
    version="0.1.0",
    description="A benchmark of progressively evolving graphs with planted dynamic communities",
    author="Daniel Lusk",
    license="MIT",
    entry_points={"console_scripts": ["dcbench=src.cli.main:main"]},
)
