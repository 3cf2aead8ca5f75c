import os

import pytest

os.environ.setdefault("TERNARY_DHT_QUIET", "1")

from field import build_field  # noqa: E402


@pytest.fixture(scope="session")
def gf1():
    return build_field(1)


@pytest.fixture(scope="session")
def gf3():
    return build_field(3)


@pytest.fixture(scope="session")
def gf5():
    return build_field(5)


@pytest.fixture(scope="session")
def gf4():
    return build_field(4)
