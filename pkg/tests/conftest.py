import pytest

# criterion number -> short title, reported once per run
CRITERIA = {
    1: "classification round trip",
    2: "gluing axiom",
    3: "barcode correctness",
    4: "covering equivalence",
    5: "z^n monodromy",
    6: "Reeb pipeline",
    7: "Whitney cusp",
}

_outcomes: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when == "teardown":
        return
    if call.when == "setup" and call.excinfo is None:
        return
    n = marker.args[0]
    _outcomes.setdefault(n, []).append("passed" if call.excinfo is None else "failed")


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        got = _outcomes.get(n)
        if not got:
            status = "NOT RUN"
        else:
            status = "PASS" if all(o == "passed" for o in got) else "FAIL"
        terminalreporter.write_line(f"criterion {n} ({title}): {status}")
