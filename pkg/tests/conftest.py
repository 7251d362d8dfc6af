from pathlib import Path

import pytest

from oaiso.design import Design

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

EXAMPLE_F = ((0, 0), (0, 0), (0, 1), (1, 0), (1, 1), (1, 1))
EXAMPLE_F1 = ((0, 1), (0, 1), (0, 0), (1, 1), (1, 0), (1, 0))
EVEN_PARITY = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))


@pytest.fixture
def example_f():
    return Design(2, EXAMPLE_F)


@pytest.fixture
def example_f1():
    return Design(2, EXAMPLE_F1)


@pytest.fixture
def even_parity():
    return Design(3, EVEN_PARITY)


def write_runs(path: Path, runs, header=True) -> Path:
    lines = [f"{len(runs)} {len(runs[0])}"] if header else []
    lines += [" ".join(map(str, r)) for r in runs]
    path.write_text("\n".join(lines) + "\n")
    return path


# one line per acceptance criterion, echoed at the end of the session
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
