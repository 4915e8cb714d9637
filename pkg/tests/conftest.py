import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shimbound.exceptional import run_pipeline  # noqa: E402
from shimbound.quadratic import build_card  # noqa: E402

_CRITERIA: dict[str, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def card_m5():
    return build_card(-5)


@pytest.fixture(scope="session")
def pipe_m5(card_m5):
    return run_pipeline(card_m5)


@pytest.fixture(scope="session")
def cubic():
    from cubic_card import cubic_card

    return cubic_card()


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[name] = ("PASS" if report.outcome == "passed" else "FAIL", report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")

    def key(name):
        return int(name.split("_")[2])

    for name in sorted(_CRITERIA, key=key):
        outcome, _ = _CRITERIA[name]
        label = name[len("test_criterion_"):].replace("_", " ")
        terminalreporter.write_line(f"{outcome}  criterion {label}")
