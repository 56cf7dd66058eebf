import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from linpers import _backend  # noqa: E402

BACKENDS = ["cython", "python"] if _backend.COMPILED else ["python"]

_results = []


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, text): acceptance criterion, summarised at the end")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    item._t0 = time.perf_counter()
    yield


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    number, text = marker.args
    status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
    _results.append((number, item.name, status, text, call.duration))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, status, text, dur in sorted(_results, key=lambda r: (str(r[0]), r[1])):
        terminalreporter.write_line(f"criterion {number:<3} {status}  {text}  [{name}, {dur:.1f}s]")
