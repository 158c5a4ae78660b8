import contextlib
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = {}


@contextlib.contextmanager
def _criterion(number, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        detail = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
        line = f"criterion {number:2d} FAIL  {title} ({detail})"
        _ACCEPTANCE[number] = line
        print(line)
        raise
    line = f"criterion {number:2d} PASS  {title} [{time.perf_counter() - start:.2f} s]"
    _ACCEPTANCE[number] = line
    print(line)


@pytest.fixture
def criterion():
    """Context manager recording one acceptance criterion as PASS or FAIL."""
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[number])
