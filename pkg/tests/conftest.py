def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA, RESULTS, _line

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, _ in CRITERIA:
        if name in RESULTS:
            terminalreporter.write_line(_line(name, *RESULTS[name]))
