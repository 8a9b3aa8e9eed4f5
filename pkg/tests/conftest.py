import functools

import pytest

from mobius_flows.catalog import build_catalog
from mobius_flows.diagram import EdgeKind as E, SeparatrixDiagram, VertexKind as K, find_cap_state
from mobius_flows.enumeration import enumerate_morse_flows, enumerate_sc_diagrams
from mobius_flows.surface_map import SignedMap


def three_point_diagram() -> SeparatrixDiagram:
    """Boundary source p, boundary sink k, interior saddle s, built dart by dart.

    Edges: 0, 1 boundary arcs p -> k; 2, 4 red p -> s; 3, 5 green s -> k.
    The two greens carry sign -1, which puts the cross-cap between them.
    """
    rotations = [(0, 4, 8, 3), (2, 11, 7, 1), (5, 6, 9, 10)]
    signs = (1, 1, 1, 1, -1, -1)
    kinds = (E.BOUNDARY, E.BOUNDARY, E.STABLE, E.UNSTABLE, E.STABLE, E.UNSTABLE)
    tails = (0, 3, 4, 6, 8, 10)
    m = SignedMap(rotations, signs)
    cap = find_cap_state(m, kinds)
    return SeparatrixDiagram(m.with_boundary_face(cap),
                             (K.BOUNDARY_SOURCE, K.BOUNDARY_SINK, K.INTERIOR_SADDLE), kinds, tails)


@functools.lru_cache(maxsize=None)
def morse(n):
    return tuple(enumerate_morse_flows(n))


@functools.lru_cache(maxsize=None)
def sc(n):
    return tuple(enumerate_sc_diagrams(n))


@functools.lru_cache(maxsize=None)
def full_catalog():
    return build_catalog(6)


@pytest.fixture
def catalog():
    return full_catalog()


@pytest.fixture
def d3():
    return three_point_diagram()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
