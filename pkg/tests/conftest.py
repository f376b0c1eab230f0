import functools

import pytest

from wormdl import random_graph
from wormdl.fixtures import ex1, hub3, ring3, ring3e

DENSITIES = (0.2, 0.4, 0.7)


def corpus_params(n=576):
    """(C, S, density, seed) covering C in 1..8, S in 1..3 and every density."""
    return [(1 + s % 8, 1 + (s // 8) % 3, DENSITIES[(s // 24) % 3], s) for s in range(n)]


@functools.lru_cache(maxsize=None)
def corpus(n=576):
    return tuple(random_graph(*p) for p in corpus_params(n))


@pytest.fixture
def g_ex1():
    return ex1()


@pytest.fixture
def g_ring3():
    return ring3()


@pytest.fixture
def g_ring3e():
    return ring3e()


@pytest.fixture
def g_hub3():
    return hub3()


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Append (criterion, passed, detail) rows shown in the terminal summary."""
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = config.stash.get(_ACCEPTANCE_KEY, [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in sorted(rows, key=lambda r: r[0]):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
