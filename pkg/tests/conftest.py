import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))

_results = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        if _results.get(name) != "FAIL":
            _results[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _results.items():
        terminalreporter.write_line(f"{outcome}  {name}")
