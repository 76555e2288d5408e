import time
from contextlib import contextmanager

import pytest

from algshift import TorusConfig, Tile

ACCEPTANCE = {}


@contextmanager
def _criterion(number, title, budget=None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        if ok and budget is not None and elapsed >= budget:
            ok = False
            ACCEPTANCE[number] = (title, False, elapsed, budget)
            raise AssertionError(f"criterion {number} took {elapsed:.2f}s, budget {budget}s")
        ACCEPTANCE[number] = (title, ok, elapsed, budget)


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE, key=str):
        title, ok, elapsed, budget = ACCEPTANCE[number]
        limit = f" (< {budget}s)" if budget else ""
        terminalreporter.write_line(
            f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {elapsed:.3f}s{limit}"
        )


@pytest.fixture
def block_tiling():
    """Aligned 2x2 square tiling of the 4x4 torus: 1s at even-even cells."""
    return TorusConfig.from_function((4, 4), lambda u: int(u[0] % 2 == 0 and u[1] % 2 == 0))


@pytest.fixture
def four_cell_tile():
    return Tile([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


@pytest.fixture
def square_tile():
    return Tile([(0, 0), (0, 1), (1, 0), (1, 1)])
