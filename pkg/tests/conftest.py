import pytest

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_addoption(parser):
    parser.addoption("--run-ragab", action="store_true", default=False, help="run the historical 2F3 expansion fixture")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-ragab"):
        return
    skip = pytest.mark.skip(reason="historical fixture; enable with --run-ragab")
    for item in items:
        if "ragab" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
