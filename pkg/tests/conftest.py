import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="Run sweeps with their full bounds and tests marked slow.",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def full_sweep(request) -> bool:
    """True under --runslow; sweeps shrink their bounds otherwise."""
    return request.config.getoption("--runslow")
