import sys

import pytest
from hypothesis import settings

from fanoq.lattice2d import FanoPolygon, enumerate_fano_polygons

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

P2 = FanoPolygon.from_vertices([(1, 0), (0, 1), (-1, -1)])
P1xP1 = FanoPolygon.from_vertices([(0, -1), (1, 0), (0, 1), (-1, 0)])
P112 = FanoPolygon.from_vertices([(-1, 0), (2, -1), (0, 1)])
P113 = FanoPolygon.from_vertices([(1, 0), (0, 1), (-1, -3)])
P116 = FanoPolygon.from_vertices([(1, 0), (0, 1), (-1, -6)])
OCTAGON = FanoPolygon.from_vertices([(2, 1), (2, 3), (1, 4), (-1, 4), (-2, 3), (-2, 1),
                                     (-1, -1), (1, -1)])


@pytest.fixture(scope="session")
def corpus2():
    return list(enumerate_fano_polygons(2))


@pytest.fixture(scope="session")
def corpus3():
    return list(enumerate_fano_polygons(3))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
