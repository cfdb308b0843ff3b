import pytest

from geomorph import fixtures


@pytest.fixture(scope="session")
def english():
    return fixtures.load("english_weak_verb")


@pytest.fixture(scope="session")
def german_present():
    return fixtures.load("german_present")


@pytest.fixture(scope="session")
def german_full():
    return fixtures.load("german_full")


@pytest.fixture(scope="session")
def latin():
    return fixtures.load("latin_adjectives")


@pytest.fixture(scope="session")
def russian():
    return fixtures.load("russian_class_one")


@pytest.fixture(scope="session")
def nuer():
    return fixtures.load("nuer_classes")


@pytest.fixture(scope="session")
def german_plurals():
    return fixtures.load("german_plurals")


@pytest.fixture(scope="session")
def spanish():
    return fixtures.load("spanish_verbs")


@pytest.fixture(scope="session")
def deponent():
    return fixtures.load("latin_deponent")
