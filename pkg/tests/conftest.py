import pytest
from hypothesis import HealthCheck, settings

from clusterword.corpus import corpus, recognition_pairs

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def small_corpus():
    return corpus(seed=1, max_size=10, count=12)


@pytest.fixture(scope="session")
def acceptance_corpus():
    return corpus(seed=1, max_size=10, count=30)


@pytest.fixture(scope="session")
def pairs(small_corpus):
    return recognition_pairs(small_corpus)
