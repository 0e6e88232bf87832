import pytest

_VERDICTS = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    """Record one acceptance line; all lines are repeated in the terminal summary."""
    lines = request.config.stash.setdefault(_VERDICTS, [])

    def record(number, title, report):
        status = "PASS" if report.ok else "FAIL"
        line = f"{status} criterion {number}: {title} ({report.passed}/{report.total} checks)"
        lines.append(line)
        print(line)
        return report.ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_VERDICTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
