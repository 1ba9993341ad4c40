# nonlevel/setup.py

from setuptools import setup, find_packages

setup(
    name="nonlevel",
    version="0.1.0",
    packages=find_packages(include=["nonlevel", "nonlevel.*"]),
    include_package_data=True,
    package_data={
        "nonlevel": [
            "config/*.yaml",
            "config/grammars/*.lark",
            "config/corpora/*.txt",
        ],
    },
    install_requires=[
        "pyyaml", # For YAML parsing
        "colorlog", # For colored logging
        "appdirs", # For finding log and config dirs on different systems
        "numpy", # For rank computations over GF(p)
        "lark", # For parsing type vectors
    ],
    extras_require={
        "dev": ["pytest"] # For testing
    },
    entry_points={
        "console_scripts": [
            "nonlevel = nonlevel.cli:main",
        ],
    },
)
