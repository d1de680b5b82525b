import pytest

from gklab.curve import enumerate_points
from gklab.tower import build_tower

TOWERS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}


def tower_for(n):
    return build_tower(*TOWERS[n])


@pytest.fixture(scope="session")
def t2():
    return tower_for(2)


@pytest.fixture(scope="session")
def t3():
    return tower_for(3)


@pytest.fixture(scope="session")
def pts2(t2):
    return enumerate_points(t2)


@pytest.fixture(scope="session")
def pts3(t3):
    return enumerate_points(t3)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
