import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

TREFOIL = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"
SEVEN_7B = "[[2,9,3,10],[4,2,5,1],[6,13,7,14],[8,3,9,4],[10,6,11,5],[12,7,13,8],[14,12,1,11]]"
# a symmetric kinked unknot: one crossing on the axis
KINK = "[[1,1,2,2]]"
# figure eight with a clasp (crossings 3, 4) across the two axis edges;
# resolving the clasp gives a two-crossing unknot
FIG8_CLASP = "[[2,8,3,7],[6,4,7,3],[8,5,1,6],[4,1,5,2]]"

# one summary line per acceptance criterion, filled in by test_acceptance.py
CRITERIA: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[k])
