"""Shared fixtures plus a per-criterion summary for the acceptance suite.

Every test in test_acceptance.py is named test_criterion_NN_*.  The
hooks below collect their outcomes and print one PASS/FAIL line per
criterion at the end of the run, so a plain ``pytest`` invocation
doubles as the acceptance report.
"""

import pathlib
import re

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

CRITERION_LABELS = {
    1: "base ontology closure contains the expected type facts (rdf mode)",
    2: "golden entailment judgments on the extended ontology (full mode)",
    3: "extracted proof replays and ends with the map rule",
    4: "contradiction-salted graphs stay satisfiable with a checked witness",
    5: "every closure triple holds in the canonical model",
    6: "cubic family grows as n^3, chain family as n(n-1)/2",
    7: "star-free closures stay within the quadratic bound",
    8: "ground entailment coincides with closure membership",
    9: "blank-node search agrees with brute-force enumeration",
    10: "disjointness-to-subclass step needs the extended rules",
    11: "parse and serialize are mutually inverse",
}

_CRITERION_RE = re.compile(r"test_criterion_(\d+)")
_outcomes = {}

# Tests may deposit named measurements here; they are echoed below the
# per-criterion verdicts so a plain run still reports them.
METRICS = {}


@pytest.fixture(scope="session")
def medical_text():
    return (FIXTURES / "medical.rnt").read_text()


@pytest.fixture(scope="session")
def medical_negative_text():
    return (FIXTURES / "medical_negative.rnt").read_text()


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    match = _CRITERION_RE.search(report.nodeid)
    if match is None:
        return
    number = int(match.group(1))
    passed = report.outcome == "passed"
    _outcomes[number] = _outcomes.get(number, True) and passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        verdict = "PASS" if _outcomes[number] else "FAIL"
        label = CRITERION_LABELS.get(number, "")
        terminalreporter.write_line(f"criterion {number}: {verdict}  {label}")
    for name in sorted(METRICS):
        terminalreporter.write_line(f"{name}: {METRICS[name]}")
