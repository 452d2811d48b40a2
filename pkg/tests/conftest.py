import re
from pathlib import Path

import pytest

from flexautomata import build_apta, parse_abbadingo

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def ref_text() -> str:
    """The bundled 13-trace binary example file, as raw text."""
    return (DATA_DIR / "reference_sample.txt").read_text()


@pytest.fixture(scope="session")
def ref_sample(ref_text):
    return parse_abbadingo(ref_text)


@pytest.fixture(scope="session")
def ref_apta(ref_sample):
    return build_apta(ref_sample)


# ---------------------------------------------------------------------------
# Acceptance reporting: one PASS/FAIL line per criterion at the end of the run.

_CRITERION = re.compile(r"test_c(\d+)_(\w+)")
_acceptance_results: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    number, slug = int(m.group(1)), m.group(2)
    if report.when == "call":
        _acceptance_results[number] = (slug, report.outcome)
    elif report.when == "setup" and report.outcome != "passed":
        # collection/setup errors and skips still deserve a line
        _acceptance_results[number] = (slug, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number in sorted(_acceptance_results):
        slug, outcome = _acceptance_results[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(
            f"criterion {number}: {verdict} ({slug.replace('_', ' ')})"
        )
