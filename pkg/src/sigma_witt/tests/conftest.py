import pytest

from sigma_witt.core.logging import configure_logger
from sigma_witt.families import build_family


@pytest.fixture(autouse=True)
def memory_logger():
    """Keep log records in memory so tests never write to ./logs."""
    return configure_logger(None, echo_errors=False)


@pytest.fixture
def qwitt_poly():
    return build_family("qwitt_poly", {"q": "symbolic"}).build_algebra()


@pytest.fixture
def qwitt_laurent():
    return build_family("qwitt_laurent", {"q": "symbolic", "k": "1"}).build_algebra()


@pytest.fixture
def power_twist():
    return build_family("power_twist", {"q": "symbolic", "s": "3"}).build_algebra()


@pytest.fixture
def multi_laurent():
    return build_family("multi_laurent", {"n": "2"}).build_algebra()
