import pytest

from isogauss import prime_context


@pytest.fixture(scope="session")
def ctx3():
    return prime_context(3)


@pytest.fixture(scope="session")
def ctx5():
    return prime_context(5)


@pytest.fixture(scope="session")
def ctx7():
    return prime_context(7)
