import numpy as np
import pytest

from graphent import build_family

ACCEPTANCE_RESULTS = []


@pytest.fixture
def record():
    """Record one acceptance criterion outcome, then assert it."""

    def _record(name, ok, detail=""):
        ACCEPTANCE_RESULTS.append((name, bool(ok), detail))
        assert ok, f"{name}: {detail}"

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


def random_connected_graph(rng, n_max=8, n=None):
    """Random spanning tree plus random extra edges."""
    from graphent.graph import Graph

    if n is None:
        n = int(rng.integers(2, n_max + 1))
    order = rng.permutation(n)
    edges = {tuple(sorted((int(order[k]), int(order[rng.integers(0, k)])))) for k in range(1, n)}
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < 0.3:
                edges.add((a, b))
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def cube():
    return build_family("cube")


@pytest.fixture
def octahedron():
    return build_family("octahedron")
