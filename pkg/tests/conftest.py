import contextlib
import time

import pytest

# criterion number -> (title, passed, detail)
_RESULTS: dict[int, tuple[str, bool, str]] = {}
_TITLES: dict[int, str] = {}


class _Record:
    def __init__(self):
        self.detail = ""


@pytest.fixture
def acceptance():
    """Context manager that records PASS/FAIL for an acceptance criterion."""

    @contextlib.contextmanager
    def run(number: int, title: str):
        _TITLES[number] = title
        rec = _Record()
        t0 = time.perf_counter()
        try:
            yield rec
        except BaseException as exc:
            _RESULTS[number] = (title, False, f"{type(exc).__name__}: {exc}".splitlines()[0][:160])
            raise
        took = time.perf_counter() - t0
        _RESULTS[number] = (title, True, f"{rec.detail} [{took:.2f}s]".strip())

    return run


def pytest_terminal_summary(terminalreporter):
    if not _TITLES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_TITLES):
        title, ok, detail = _RESULTS.get(number, (_TITLES[number], False, "not run to completion"))
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
