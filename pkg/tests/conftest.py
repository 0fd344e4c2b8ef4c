import pytest

from unital_lab.gfield import ctx_for_order

SMALL_Q = [3, 5, 7, 9, 11, 13]


@pytest.fixture(params=SMALL_Q, ids=lambda q: f"q{q}")
def small_ctx(request):
    return ctx_for_order(request.param)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
