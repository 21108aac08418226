import pytest
from hypothesis import settings

from cubefill.sageev_gen import corpus

settings.register_profile("default", deadline=None, max_examples=25)
settings.load_profile("default")


@pytest.fixture(scope="session")
def items():
    return corpus(0)


@pytest.fixture(scope="session")
def by_name(items):
    return {it.name: it for it in items}
