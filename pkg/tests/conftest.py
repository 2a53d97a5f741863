import numpy as np
import pytest

from cmramsey import ColorMatrix

SEED = 20240601


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def random_matrix(rng, n, colors):
    return ColorMatrix(rng.integers(0, colors, size=(n, n)), colors)


def constant(n, color, colors=2):
    return ColorMatrix(np.full((n, n), color), colors)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion and print it."""
    lines = request.config.stash[_ACCEPTANCE]

    def report(label, ok, detail=""):
        line = f"criterion {label}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        lines.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
