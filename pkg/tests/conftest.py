import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tigroups.corpus import build, default_corpus, family_recipes
from tigroups.group import Permutation, group_from_generators
from tigroups.subgroups import all_subgroups

ACCEPTANCE_LINES: list[str] = []

_RECIPES = {r.name: r for r in family_recipes()}
_BUILT: dict = {}
_LATTICES: dict = {}


def named(name):
    """A family group by corpus name, built once per session."""
    if name not in _BUILT:
        _BUILT[name] = build(_RECIPES[name])
    return _BUILT[name]


def lattice_of(G):
    key = id(G)
    if key not in _LATTICES:
        _LATTICES[key] = (G, all_subgroups(G))
    return _LATTICES[key][1]


def perm_group(degree, *cycles, name=""):
    return group_from_generators([Permutation.from_cycles(c, degree) for c in cycles], name)


def elem(G, cycles):
    """Index of the permutation written in cycle notation (labels do not depend on degree)."""
    return G.labels.index(str(Permutation.from_cycles(cycles, 64)))


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


@pytest.fixture(scope="session")
def corpus_lattices(corpus):
    return [(G, lattice_of(G)) for G in corpus]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
