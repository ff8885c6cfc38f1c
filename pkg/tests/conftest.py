import numpy as np
import pytest

from perfcode.hamming import build


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    monkeypatch.setenv("PERFCODE_BACKEND", request.param)
    return request.param


@pytest.fixture(scope="session")
def h7():
    return build(2, 3)


@pytest.fixture(scope="session")
def h15():
    return build(2, 4)


@pytest.fixture(scope="session")
def h13():
    return build(3, 3)


@pytest.fixture(scope="session")
def h31():
    return build(2, 5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
