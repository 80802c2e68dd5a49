import wgkat.syntax

# the expression node class is called Test; keep pytest from collecting it
wgkat.syntax.Test.__test__ = False


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULT_LINES:
            terminalreporter.write_line(line)
