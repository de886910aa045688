"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""
import pytest

CRITERIA = {
    1: "closed-form inverse norms match dense oracles",
    2: "asymptotic constants at n=512",
    3: "Sherman-Morrison(-Woodbury) inverses match LU",
    4: "Toeplitz-plus-correction reconstructions are exact",
    5: "1D convergence orders and bound-product slopes",
    6: "2D convergence orders",
    7: "spectral distribution: W1 decay and clustering",
    8: "zero-distribution and trace-norm decay",
    9: "smallest-eigenvalue stabilization",
    10: "CLI pipeline determinism",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(marker.args[0], []).append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        results = _outcomes.get(k)
        if not results:
            status = "NOT RUN"
        elif all(o == "passed" for _, o in results):
            status = "PASS"
        else:
            failed = [name for name, o in results if o != "passed"]
            status = "FAIL (" + ", ".join(failed) + ")"
        terminalreporter.write_line(f"criterion {k:2d}: {status:6s} {CRITERIA[k]}")
