import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ODD_DIMS = (3, 5, 7)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def maxdiff(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
