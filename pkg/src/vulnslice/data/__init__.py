"""Bundled corpora and configuration data.

- ``fc_calls.txt``      seed list of risky library calls
- ``handcrafted/``      30 small functions for candidate-extraction checks
- ``mini_corpus/``      40 SARD-style programs with a labeling manifest
- ``running_example.c`` the two-function slicing walkthrough program
"""

from importlib import resources


def data_path(*parts: str) -> str:
    """Filesystem path of a bundled data file or directory."""
    base = resources.files("vulnslice.data")
    target = base
    for part in parts:
        target = target.joinpath(part)
    return str(target)


def mini_corpus_manifest() -> str:
    return data_path("mini_corpus", "manifest.json")


def handcrafted_dir() -> str:
    return data_path("handcrafted")


def running_example_path() -> str:
    return data_path("running_example.c")
