import random

import pytest

from torushfl.pipeline import torus_tables


def pytest_addoption(parser):
    parser.addoption("--run-n5", action="store_true", default=False, help="run the n=5 (10! states) computation")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-n5"):
        return
    skip = pytest.mark.skip(reason="needs --run-n5")
    for item in items:
        if "n5" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def tables():
    """n -> (grid, tilde, hat) for T(n, n), n = 1 (unknot) .. 4."""
    return {n: torus_tables(n) for n in range(1, 5)}


def random_grid_perms(size: int, rng: random.Random):
    """O on the diagonal, X a random permutation avoiding the O cells."""
    while True:
        x = list(range(size))
        rng.shuffle(x)
        if size == 1 or all(x[i] != i for i in range(size)):
            return tuple(range(size)), tuple(x)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
