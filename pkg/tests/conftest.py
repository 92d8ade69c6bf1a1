import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_VERDICTS = []


def record_verdict(line):
    _VERDICTS.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
