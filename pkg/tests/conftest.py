import sys

import pytest

from connaug.instance import Instance, normalize, parse_instance


def cycle_text(t=5, k=2, directed=False):
    kind = "directed" if directed else "undirected"
    lines = [f"aug {kind} edge {k}", f"nodes {t}", "terminals " + " ".join(map(str, range(t)))]
    lines += [f"jedge {i} {(i + 1) % t}" for i in range(t)]
    return "\n".join(lines) + "\n"


@pytest.fixture
def cycle5():
    return parse_instance(cycle_text())


@pytest.fixture
def cycle10(cycle5):
    return normalize(cycle5)


@pytest.fixture
def flow_example():
    # J: 0->1->2, candidates 0->3 (3), 3->2 (2), 0->2 (6)
    return Instance(True, "edge", 4, (0, 2), 1, ((0, 1), (1, 2)), ((0, 3, 3), (3, 2, 2), (0, 2, 6)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
