import pytest

from algebras import (
    a2_algebra,
    a3_algebra,
    kronecker_algebra,
    loop2_algebra,
    loop3_algebra,
    nakayama_algebra,
    square_algebra,
    BUILDERS,
)


@pytest.fixture(scope="session")
def a2():
    return a2_algebra()


@pytest.fixture(scope="session")
def a3():
    return a3_algebra()


@pytest.fixture(scope="session")
def kronecker():
    return kronecker_algebra()


@pytest.fixture(scope="session")
def square():
    return square_algebra()


@pytest.fixture(scope="session")
def loop2():
    return loop2_algebra()


@pytest.fixture(scope="session")
def loop3():
    return loop3_algebra()


@pytest.fixture(scope="session")
def nakayama():
    return nakayama_algebra()


@pytest.fixture(scope="session")
def all_algebras():
    """Name -> algebra for every fixture, rational variants included."""
    return {name: build() for name, build in BUILDERS.items()}
