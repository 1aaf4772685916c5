"""Collects one PASS/FAIL verdict per acceptance criterion and prints them at the end."""

import pytest

_criterion_of: dict[str, str] = {}
_verdicts: dict[str, bool] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            name = mark.args[0]
            _criterion_of[item.nodeid] = name
            _verdicts.setdefault(name, True)


def pytest_runtest_logreport(report):
    name = _criterion_of.get(report.nodeid)
    if name is not None and report.failed:
        _verdicts[name] = False


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _verdicts.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")


@pytest.fixture
def budget():
    """Assert that a block finishes within ``seconds`` of wall time."""
    import time
    from contextlib import contextmanager

    @contextmanager
    def within(seconds):
        start = time.perf_counter()
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"

    return within
