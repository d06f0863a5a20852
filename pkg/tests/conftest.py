import pytest

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def e6ctx():
    from ricciflat.e6 import cached_context
    return cached_context()


@pytest.fixture
def criterion():
    """record(number, label, ok, detail=""): log one acceptance line, then assert."""

    def record(number, label, ok, detail="", expected_failure=False):
        status = "pass" if ok else "FAIL"
        tag = " [known deviation, xfail]" if expected_failure else ""
        line = f"[{status}] criterion {number}: {label}" + (f" ({detail})" if detail else "") + tag
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
