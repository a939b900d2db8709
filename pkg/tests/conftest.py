import json
import sys
from pathlib import Path

import pytest

from loopforge.enumerate import EnumerationTask, corpus_read, enumerate_loops
from loopforge.group import cyclic_group, semidirect_product
from loopforge.loop import read_loop

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def oracle_values():
    with open(DATA / "oracle_values.json") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def bruck_corpus():
    return corpus_read(DATA / "bruck16")


@pytest.fixture(scope="session")
def bol_ar_corpus():
    return corpus_read(DATA / "bolar12")


@pytest.fixture(scope="session")
def bol8():
    return corpus_read(DATA / "bol8")


@pytest.fixture(scope="session")
def bruck8():
    return read_loop(DATA / "bruck8.loop")


@pytest.fixture(scope="session")
def c3_x_bruck8():
    return read_loop(DATA / "c3_x_bruck8.loop")


@pytest.fixture(scope="session")
def s3_loop():
    return read_loop(DATA / "S3.loop")


@pytest.fixture(scope="session")
def s3_group():
    return semidirect_product(cyclic_group(3), cyclic_group(2), [[0, 1, 2], [0, 2, 1]])


@pytest.fixture(scope="session")
def loops_to_6():
    return [X for n in range(1, 7) for X in enumerate_loops(EnumerationTask(n, "loop"))]


@pytest.fixture(scope="session")
def glauberman():
    """(case, loop) for every built-in odd group of order ≤ 81 and each involution."""
    from loopforge.bruck import glauberman_loop
    from loopforge.library import glauberman_cases
    return [(c, glauberman_loop(c.group, c.tau)) for c in glauberman_cases(81)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for key in sorted(lines):
            terminalreporter.write_line(lines[key])
