import pytest

_acceptance = {}


def pytest_runtest_logreport(report):
    if "acceptance" not in report.keywords:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line("%-55s %s" % (name, "PASS" if _acceptance[name] == "passed" else "FAIL"))


@pytest.fixture
def osc21():
    from coupled_sheets.surface import OscillatorPair

    return OscillatorPair(2.0, 1.0)
