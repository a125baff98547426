import pytest

from knotzeta.cli import corpus_names, load_corpus

# small twist knots get exercised everywhere; bigger corpus entries only in
# the tests that need breadth
KNOWN_POLY = {
    "unknot": {0: 1},
    "kink_pp": {0: 1},
    "kink_pm": {0: 1},
    "trefoil": {0: 1, 1: -1, 2: 1},
    "trefoil_left": {0: 1, 1: -1, 2: 1},
    "figure8": {0: 1, 1: -3, 2: 1},
    "5_1": {0: 1, 1: -1, 2: 1, 3: -1, 4: 1},
    "5_2": {0: 2, 1: -3, 2: 2},
    "6_1": {0: 2, 1: -5, 2: 2},
}

KNOWN_DET = {
    "unknot": 1, "kink_pp": 1, "kink_pm": 1,
    "trefoil": 3, "trefoil_left": 3, "figure8": 5,
    "5_1": 5, "5_2": 7, "6_1": 9,
}


@pytest.fixture(scope="session")
def corpus():
    return {name: load_corpus(name) for name in corpus_names()}


@pytest.fixture(scope="session")
def unknot(corpus):
    return corpus["unknot"]


@pytest.fixture(scope="session")
def trefoil(corpus):
    return corpus["trefoil"]


@pytest.fixture(scope="session")
def figure8(corpus):
    return corpus["figure8"]
