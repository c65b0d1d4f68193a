import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("ci")


@pytest.fixture()
def rng():
    # function-scoped: every test sees the same fresh stream regardless of
    # which other tests ran before it
    return np.random.default_rng(20240817)
