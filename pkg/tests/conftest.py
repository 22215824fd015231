import time
from contextlib import contextmanager

import pytest

_LINES = {}


class AcceptanceLog:
    """Collects one PASS/FAIL line per acceptance criterion."""

    @contextmanager
    def criterion(self, number: int, title: str, limit: float = None):
        start = time.perf_counter()
        notes = []
        try:
            yield notes
        except BaseException as exc:
            dt = time.perf_counter() - start
            _LINES[number] = f"criterion {number:2d} FAIL  {title}  ({dt:.2f} s): {exc!r}"[:300]
            print(_LINES[number])
            raise
        dt = time.perf_counter() - start
        ok = limit is None or dt < limit
        extra = f"; {'; '.join(notes)}" if notes else ""
        bound = f" < {limit:g} s" if limit is not None else ""
        _LINES[number] = (f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  "
                          f"({dt:.2f} s{bound}){extra}")
        print(_LINES[number])
        assert ok, f"criterion {number} took {dt:.2f} s, limit {limit} s"


@pytest.fixture(scope="session")
def acceptance():
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_LINES):
        terminalreporter.write_line(_LINES[n])
