import json
from pathlib import Path

import pytest

from hopfknot import cyclic_group, cyclic_group_algebra, drinfeld_double, gauged, symmetric_group

GOLDEN = Path(__file__).with_name("golden.json")


def pytest_addoption(parser):
    parser.addoption("--rederive", action="store_true", help="recompute golden.json from the reference oracles")


@pytest.fixture(scope="session")
def golden(request):
    if request.config.getoption("--rederive") or not GOLDEN.exists():
        from oracles import derive_all

        GOLDEN.write_text(json.dumps(derive_all(), indent=1, sort_keys=True) + "\n")
    return json.loads(GOLDEN.read_text())


_BUILDERS = {
    "cyclic:3": lambda: cyclic_group_algebra(3),
    "cyclic:5": lambda: cyclic_group_algebra(5),
    "cyclic:7": lambda: cyclic_group_algebra(7),
    "double-cyclic:2": lambda: drinfeld_double(cyclic_group(2)),
    "double-cyclic:3": lambda: drinfeld_double(cyclic_group(3)),
    "double-S3": lambda: drinfeld_double(symmetric_group(3)),
}
_CACHE: dict = {}


def algebra(name: str):
    """(gauged H, R) for a named zoo algebra, built once per session."""
    if name not in _CACHE:
        H, R = _BUILDERS[name]()
        _CACHE[name] = (gauged(H, R), R)
    return _CACHE[name]


@pytest.fixture
def zoo():
    return algebra


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
