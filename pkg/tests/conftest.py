import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def hexagon():
    from soapsteiner import regular_polygon

    return regular_polygon(6)


@pytest.fixture(scope="session")
def hexagon_search(hexagon):
    """Full topology search on the hexagon, capped at length 6 (shared: it takes several seconds)."""
    import time

    from soapsteiner.relax import search_local_minima

    start = time.perf_counter()
    trees, diag = search_local_minima(hexagon, 6.0)
    return trees, diag, time.perf_counter() - start


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
