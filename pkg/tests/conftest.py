import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wcckit.graph import Graph  # noqa: E402
from wcckit.kernels import get_backend  # noqa: E402


@pytest.fixture(params=["numba", "numpy"])
def kernel(request):
    return get_backend(request.param)


def random_graph(rng, n, p):
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.shape[0]) < p
    return Graph.from_edges(np.column_stack([iu[keep], ju[keep]]), n=n)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one PASS/FAIL line per acceptance criterion in the terminal summary
_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        num, text = m.args
        prev = _criteria.get(num, (True, text))
        _criteria[num] = (prev[0] and rep.passed, text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        ok, text = _criteria[num]
        terminalreporter.write_line(f"AC-{num:02d} {'PASS' if ok else 'FAIL'}  {text}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, text): acceptance criterion")
