"""Example automata shipped with the package (``treeauto/data``)."""
from __future__ import annotations

from importlib import resources

from . import textio

_DATA = resources.files("treeauto") / "data"


def path(filename: str) -> str:
    return str(_DATA / filename)


def nta(name: str):
    return textio.read_nta(path(f"{name}.nta"))


def ata(name: str):
    return textio.read_ata(path(f"{name}.ata"))


def pair_separators(name: str):
    """Pairwise separator records for the shipped NTA ``name``."""
    return textio.read_separators(path(f"{name}.pairs"), nta(name))
