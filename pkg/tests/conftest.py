import pytest

from blockcirc import build, build_field


@pytest.fixture(scope="session")
def gf11():
    return build_field("prime", 11)


@pytest.fixture(scope="session")
def gf8():
    return build_field("binary", 3)


@pytest.fixture(scope="session")
def example_code(gf11):
    """The [16, 8] code with four [6, 4, 3] local codes over GF(11)."""
    return build(4, 2, 2, 2, gf11)
