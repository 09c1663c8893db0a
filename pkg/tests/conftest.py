import time
from contextlib import contextmanager

import pytest

_CRITERIA: list[str] = []


@contextmanager
def _criterion(number: int, title: str, limit_s: float):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as e:
        elapsed = time.perf_counter() - t0
        _CRITERIA.append(f"FAIL  criterion {number}: {title} ({elapsed:.2f} s) -- {type(e).__name__}: {e}")
        raise
    elapsed = time.perf_counter() - t0
    ok = elapsed < limit_s
    _CRITERIA.append(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({elapsed:.2f} s, limit {limit_s:g} s)")
    if not ok:
        pytest.fail(f"criterion {number} took {elapsed:.2f} s, limit {limit_s} s")


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
