import os
import random

import pytest

_results: list[tuple[str, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, text): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        _results.append((str(mark.args[0]), status, mark.args[1]))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num, status, text in sorted(_results, key=lambda r: (int(r[0]), r[2])):
        terminalreporter.write_line(f"{status} [{num}] {text}")


@pytest.fixture
def rng():
    return random.Random(int(os.environ.get("POW2LAB_SEED", "20240601")))


def long_runs() -> bool:
    return os.environ.get("POW2LAB_LONG", "") not in ("", "0")
