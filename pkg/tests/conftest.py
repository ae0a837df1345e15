import pytest

from collatzlab import preset


@pytest.fixture(params=["3n+1", "5n+1", "3n+5"])
def preset_map(request):
    return preset(request.param)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
