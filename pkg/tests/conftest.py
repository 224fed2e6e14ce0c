import pytest

from lgsieve import LGParams, build_prime_table, construct


@pytest.fixture(scope="session")
def table1k():
    return build_prime_table(1000)


@pytest.fixture(scope="session")
def table10k():
    return build_prime_table(10**4)


@pytest.fixture(scope="session")
def table100k():
    return build_prime_table(10**5)


@pytest.fixture(scope="session")
def set100(table1k):
    return construct(LGParams(100, 0.2), table1k)


@pytest.fixture(scope="session")
def set10k(table10k):
    return construct(LGParams(10**4, 0.1), table10k)
