import numpy as np
import pytest

from lxdr import load_bundled


class LinearStub:
    """An exactly affine reducer x -> W x + b for oracle tests."""

    kind = "linear-stub"

    def __init__(self, W, b=None):
        self.W = np.asarray(W, dtype=np.float64)
        self.b = (np.zeros(self.W.shape[0]) if b is None
                  else np.asarray(b, dtype=np.float64))

    @property
    def input_dims(self):
        return self.W.shape[1]

    @property
    def reduced_dims(self):
        return self.W.shape[0]

    def transform_batch(self, B):
        return B @ self.W.T + self.b


@pytest.fixture(scope="session")
def iris():
    return load_bundled("iris")


@pytest.fixture(scope="session")
def diabetes():
    return load_bundled("diabetes")


@pytest.fixture(scope="session")
def digits():
    return load_bundled("digits")
