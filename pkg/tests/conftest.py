import pytest

from systems import BATTERY


@pytest.fixture(params=sorted(BATTERY))
def battery_system(request):
    return BATTERY[request.param]


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, (ok, detail) in sorted(test_acceptance.RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
