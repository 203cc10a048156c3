import os
import random

import pytest
from hypothesis import settings

settings.register_profile("lf", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("lf")

SEED = int(os.environ.get("LF_SEED", "20261019"))


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def g3():
    from lefschetz.fixtures import genus3_curves
    return genus3_curves()
