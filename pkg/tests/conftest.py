import re

_AC = re.compile(r"test_ac(\d+)_(\w+)")
_results = {}


def pytest_runtest_logreport(report):
    m = _AC.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        if report.failed or key not in _results:
            _results[key] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), status in sorted(_results.items()):
        terminalreporter.write_line(f"AC{num:02d} {status}  {name.replace('_', ' ')}")
