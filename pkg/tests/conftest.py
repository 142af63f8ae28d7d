import pytest

from g2rigid.convolution import g2_triple


@pytest.fixture(scope="session")
def triple():
    """The rank-7 rigid triple over Q, built once per test session."""
    return g2_triple()
