import pytest

_LINES = pytest.StashKey[list]()
_PASSED = pytest.StashKey[bool]()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    report = (yield).get_result()
    if report.when == "call":
        item.stash[_PASSED] = report.passed


@pytest.fixture
def criterion(request):
    """Name an acceptance criterion; a PASS/FAIL line is printed when the test ends."""
    info = {}

    def record(label, detail=""):
        info["label"], info["detail"] = label, detail

    yield record
    if "label" in info:
        status = "PASS" if request.node.stash.get(_PASSED, False) else "FAIL"
        line = f"{status}  {info['label']}" + (f"  ({info['detail']})" if info["detail"] else "")
        print("\n" + line)
        request.config.stash.setdefault(_LINES, []).append(line)


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
