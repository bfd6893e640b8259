from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("exact", deadline=None, derandomize=True, print_blob=True)
settings.load_profile("exact")

DATA = Path(__file__).parent / "data"
_RESULTS = pytest.StashKey[dict]()


@pytest.fixture
def data_dir() -> Path:
    return DATA


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    results = item.config.stash.setdefault(_RESULTS, {})
    failed = rep.failed or rep.skipped
    ok = results.get(number, (title, True))[1] and not failed
    results[number] = (title, ok)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok = results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
