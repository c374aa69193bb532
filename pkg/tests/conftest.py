from pathlib import Path

import pytest

from polywedge import build_complex

DATA = Path(__file__).parent / "data"

# Triangle-plus-quad mesh: triangle f0 = (v0, v1, v2) and quad f1 = (v2, v1, v3, v4).
# Edge ids and orientations are fixed by hand so that f1 meets e1 against its
# orientation and e3, e4, e5 along it.
TRIQUAD_FACES = [(0, 1, 2), (2, 1, 3, 4)]
TRIQUAD_EDGES = [(0, 1), (1, 2), (2, 0), (1, 3), (3, 4), (4, 2)]


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def triquad():
    return build_complex(TRIQUAD_FACES, 5, edges=TRIQUAD_EDGES)


@pytest.fixture
def triangle():
    return build_complex([(0, 1, 2)], 3)


@pytest.fixture
def pentagon():
    return build_complex([(0, 1, 2, 3, 4)], 5)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record a one-line pass/fail verdict for an acceptance criterion.

    Call it with ``(number, title, passed, detail)``; the lines are also
    printed together at the end of the run.
    """

    def record(number, title, passed, detail=""):
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
        print(line)
        _ACCEPTANCE_LINES.append(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
