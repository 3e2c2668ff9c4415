from __future__ import annotations

_ACCEPTANCE_RESULTS: dict[str, str] = {}


def record_criterion(name: str) -> None:
    _ACCEPTANCE_RESULTS[name] = "PASS"


def pytest_runtest_makereport(item, call):
    if call.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker and marker.args:
        name = marker.args[0]
        if call.excinfo is not None:
            _ACCEPTANCE_RESULTS[name] = "FAIL"
        else:
            _ACCEPTANCE_RESULTS.setdefault(name, "PASS")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, status in _ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"[{status}] {name}")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): end-to-end acceptance criterion test"
    )
