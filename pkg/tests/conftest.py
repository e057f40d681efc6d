import pytest

from ifamarket._engine import warm_up


@pytest.fixture(scope="session", autouse=True)
def _warm_jit():
    # compile the numba walks once so timed assertions measure the walks,
    # not compilation
    warm_up()
