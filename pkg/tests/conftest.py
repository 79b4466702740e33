import pytest

from catassoc import stg
from catassoc.bst import from_nested
from catassoc.caterpillar import Caterpillar, leg

ACCEPTANCE_LINES = []

SAMPLE_PARENTS = {
    "s2": "l3.1", "l1.1": "s2", "l1.2": "l1.1", "s1": "l1.2", "s4": "s2",
    "s3": "s4", "l4.1": "s4", "l5.1": "s4", "s5": "l5.1", "l5.2": "s5",
}


@pytest.fixture
def sample_graph():
    return Caterpillar((2, 0, 1, 1, 2))


@pytest.fixture
def sample_tree(sample_graph):
    return stg.from_parent_map(sample_graph, "l3.1", SAMPLE_PARENTS)


@pytest.fixture
def sample_bst():
    return from_nested((2, 1, (4, 3, 5)))


@pytest.fixture
def sample_pi():
    return [leg(3, 1), leg(1, 2), leg(5, 2), leg(1, 1), leg(4, 1), leg(5, 1)]


@pytest.fixture
def acceptance():
    def record(number, passed, detail):
        line = f"[acceptance {number}] {'PASS' if passed else 'FAIL'}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
