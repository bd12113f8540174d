import numpy as np
import pytest

from foldspec._accel import available_backends


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for the acceptance summary, then assert."""
    log = request.config.stash[_ACCEPTANCE]

    def check(label, ok, detail="", hard=True):
        status = "PASS" if ok else ("FAIL" if hard else "MISS")
        log.append(f"[{status}] {label}" + (f": {detail}" if detail else ""))
        if hard:
            assert ok, f"{label}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
