"""Test-suite wiring: the acceptance report that survives output capture."""
import re

_acceptance_lines: list[str] = []
_seen_criteria: set[str] = set()

_CRITERION = re.compile(r"test_criterion_(\d+)")


def record_acceptance(line: str) -> None:
    """Collect one criterion verdict for the terminal summary."""
    _acceptance_lines.append(line)
    m = re.search(r"ACCEPTANCE (\d+)", line)
    if m:
        _seen_criteria.add(m.group(1))
    print("\n" + line)


def pytest_runtest_makereport(item, call):
    # a criterion that raised never recorded its verdict: add the FAIL line
    if call.when != "call" or call.excinfo is None:
        return
    m = _CRITERION.search(item.name)
    if m and m.group(1) not in _seen_criteria:
        _seen_criteria.add(m.group(1))
        _acceptance_lines.append(
            f"ACCEPTANCE {m.group(1)} FAIL: {call.excinfo.exconly()[:160]}"
        )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_acceptance_lines):
        terminalreporter.write_line(line)
