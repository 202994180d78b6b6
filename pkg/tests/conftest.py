import pytest

from uag import zoo


@pytest.fixture(scope="session")
def s3():
    return zoo.load("s3")


@pytest.fixture(scope="session")
def l2():
    return zoo.load("l2")


@pytest.fixture(scope="session")
def m3():
    return zoo.load("m3")


@pytest.fixture(scope="session")
def z2():
    return zoo.load("z2")


@pytest.fixture(scope="session")
def z2ring():
    return zoo.load("z2ring")


@pytest.fixture(scope="session")
def z2zero():
    return zoo.load("z2zero")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
