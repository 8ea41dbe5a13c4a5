import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# pass/fail lines recorded by the acceptance suite, echoed after the run
# (normal prints are swallowed by pytest's capture)
acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    if not acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_lines:
        terminalreporter.write_line(line)
