import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from credal_communities.data import karate_path  # noqa: E402
from credal_communities.graph import load_graph  # noqa: E402

from acceptance_log import LINES as ACCEPTANCE_LINES  # noqa: E402


@pytest.fixture(scope="session")
def karate():
    return load_graph(karate_path())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
