"""
Building guideline:

In the current directory, running `pip install .`. To run the test suite
as well, install the `test` extra: `pip install .[test]`.

"""

from setuptools import setup, find_packages

setup(
    name="byzsim",
    version="v0.1.0",
    description="Simulator of parameter-server training under Byzantine workers and robust aggregation.",
    long_description=open("README.md", "r", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    license="Apache-2.0",
    packages=find_packages(exclude=("tests", "tests.*")),
    install_requires=[
        "numpy>=1.17",
        "scipy>=1.3",
    ],
    extras_require={
        "test": ["pytest>=6.0", "hypothesis>=6.0"],
    },
    entry_points={
        "console_scripts": ["byzsim=byzsim.cli:main"],
    },
    python_requires=">=3.8.0",
    classifiers=[
        "Operating System :: OS Independent",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
    ],
    keywords=(
        "byzantine federated-learning distributed-sgd krum bulyan trimmed-mean "
        "model-poisoning backdoor parameter-server"
    ),
)
