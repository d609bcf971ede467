import random
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

_acceptance: dict[str, list] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = getattr(report, "acceptance_label", None)
    if label is None:
        return
    _acceptance[report.nodeid] = [label, report.outcome, report.duration]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None:
        rep.acceptance_label = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome, dur in sorted(_acceptance.values(), key=lambda r: _order(r[0])):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {label}  ({dur:.2f} s)")


def _order(label: str):
    head = label.split()[0]
    return (int(head[2:]) if head[2:].isdigit() else 99, label)


@contextmanager
def within(seconds: float):
    """Fail if the block takes longer than ``seconds`` of wall time."""
    t0 = time.perf_counter()
    yield
    took = time.perf_counter() - t0
    assert took < seconds, f"took {took:.2f} s, budget {seconds} s"


@pytest.fixture
def rng():
    return random.Random(1234)
