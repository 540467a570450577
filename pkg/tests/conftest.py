import json
import pathlib

import pytest

CORPUS = pathlib.Path(__file__).parent / "corpus"

_CRITERIA = {
    1: "bracket laws: graded antisymmetry and Jacobi, all four brackets",
    2: "associativity <-> [mu,mu]=0 and Jacobi <-> [w,w]=0, both directions",
    3: "square-zero verdicts agree with structure checkers, zero disagreements",
    4: "d o d = 0 for all seven complex flavors on randomized bases",
    5: "derivation-pair differential equals the pair-bracket form",
    6: "double-bracket identities over compatible Lie derivation pairs",
    7: "transfer soundness for all recipes plus operator constructions",
    8: "concrete anchor instances pass their checks",
    9: "desk-scale cohomology dimensions and suite runtime",
}

_outcomes = {}


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture(scope="session")
def seeds():
    return json.loads((CORPUS / "manifest.json").read_text())["seeds"]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.name.startswith("test_criterion_"):
        number = int(item.name.split("_")[2])
        _outcomes[number] = report.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        status = "PASS" if _outcomes[number] else "FAIL"
        terminalreporter.write_line(
            f"criterion {number} ({_CRITERIA[number]}): {status}")
