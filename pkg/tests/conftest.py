import pytest

from treeauto import datasets
from treeauto.boolean import partition_family
from treeauto.verify import random_corpus


@pytest.fixture(scope="session")
def inf():
    return datasets.nta("INF")


@pytest.fixture(scope="session")
def eb():
    return datasets.nta("EB")


@pytest.fixture(scope="session")
def allb():
    return datasets.nta("ALLB")


@pytest.fixture(scope="session")
def p4():
    return datasets.nta("P4")


@pytest.fixture(scope="session")
def nxt():
    return datasets.nta("NEXT")


@pytest.fixture(scope="session")
def corpus_ab():
    return random_corpus(("a", "b"), 200, seed=11)


@pytest.fixture(scope="session")
def corpus_abc():
    return random_corpus(("a", "b", "c"), 200, seed=23)


@pytest.fixture(scope="session")
def family():
    def build(name):
        return partition_family(datasets.nta(name), datasets.pair_separators(name))
    return build
