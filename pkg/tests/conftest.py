import numpy as np
import pytest

from metrictrees import gallery


@pytest.fixture
def simple_doc():
    """Trunk A--B of length 2 with unit branches B--C and B--D."""
    return gallery("simple")


@pytest.fixture
def star_doc():
    def make(n, spoke_len=1.0):
        return gallery("star", n=n, spoke_len=spoke_len)

    return make


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def star_tips(doc):
    n = doc.tree.n_nodes - 1
    return [doc.points[f"tip{i}"] for i in range(1, n + 1)]
