"""Collects acceptance-criterion verdicts and prints one line each at the
end of the run, whatever the capture mode."""

ACCEPTANCE_LINES = []


def record_criterion(number: int, passed: bool, detail: str):
    verdict = "PASS" if passed else "FAIL"
    ACCEPTANCE_LINES.append(f"criterion {number}: {verdict} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
