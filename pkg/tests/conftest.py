import pytest

from rhtc import catalog


@pytest.fixture
def s2():
    return catalog.model("s2")


@pytest.fixture
def s3():
    return catalog.model("s3")


@pytest.fixture
def cp2():
    return catalog.model("cp2")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k])
