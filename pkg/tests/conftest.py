import pytest

from gentlecones.corpus import load_corpus_presentation


@pytest.fixture(scope="session")
def algebra_a():
    return load_corpus_presentation("algebra-A")


@pytest.fixture(scope="session")
def algebra_b():
    return load_corpus_presentation("algebra-B")


@pytest.fixture(scope="session")
def linear_a3():
    return load_corpus_presentation("linear-A3")


@pytest.fixture(scope="session")
def two_cycle():
    return load_corpus_presentation("two-cycle")
