import itertools

import pytest

from toricd2 import FracVector, FrobeniusLevel, from_rays

QUADRIC_RAYS = [(1, 0), (-1, 2)]
THREEFOLD_RAYS = [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)]
PLANE_RAYS = [(1, 0), (0, 1)]
LINE_RAYS = [(1,)]


@pytest.fixture
def quadric():
    return from_rays(QUADRIC_RAYS)


@pytest.fixture
def threefold():
    return from_rays(THREEFOLD_RAYS)


@pytest.fixture
def plane():
    return from_rays(PLANE_RAYS)


@pytest.fixture
def line():
    return from_rays(LINE_RAYS)


def fv(*coords, q):
    """Point of (1/q)Z^n from integer numerators."""
    return FracVector(coords, q)


def grid(q, lo, hi, n):
    """All points of (1/q)Z^n in the closed box [lo, hi]^n, lexicographic."""
    r = range(lo * q, hi * q + 1)
    return [FracVector(N, q) for N in itertools.product(r, repeat=n)]


def open_anticanonical_grid(datum, q, lo=-1, hi=1):
    return [
        d for d in grid(q, lo, hi, datum.dim)
        if all(sum(x * r for x, r in zip(d.num, ray)) > -q for ray in datum.rays)
    ]


def level(p, e=1):
    return FrobeniusLevel(p, e)


_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.outcome != "passed":
        _criteria[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split("_")[2])):
        num = name.split("_")[2]
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"{_criteria[name]}  criterion {num}: {label}")
