"""Shared fixtures: catalog graphs and seeded random cubic graphs."""

import sys
from pathlib import Path
from typing import Callable

import pytest

PROJECT_ROOT: Path = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from core.catalog import catalog, catalog_graph
from core.construct import random_regular
from core.graph import Graph
from core.types import EmbeddedGraph


@pytest.fixture
def k4() -> Graph:
    return catalog_graph("k4")


@pytest.fixture
def k33() -> Graph:
    return catalog_graph("k33")


@pytest.fixture
def cube() -> Graph:
    return catalog_graph("cube")


@pytest.fixture
def petersen() -> Graph:
    return catalog_graph("petersen")


@pytest.fixture
def dodecahedron() -> EmbeddedGraph:
    entry = catalog("dodecahedron")
    assert isinstance(entry, EmbeddedGraph)
    return entry


@pytest.fixture
def bridged_cubic() -> Graph:
    """Two K4s with one edge subdivided each, the subdivision vertices joined by a bridge."""
    edges = [
        # left: K4 on 0..3 with (0, 1) subdivided by 4
        (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4),
        # right: K4 on 5..8 with (5, 6) subdivided by 9
        (5, 7), (5, 8), (6, 7), (6, 8), (7, 8), (5, 9), (6, 9),
        (4, 9),
    ]
    return Graph.from_edges(10, edges)


@pytest.fixture
def random_cubic() -> Callable[[int, int], Graph]:
    """Factory: first connected cubic graph on n vertices at or after seed."""

    def make(n: int, seed: int) -> Graph:
        for offset in range(100):
            graph = random_regular(n, 3, seed * 1000 + offset)
            if graph.is_connected():
                return graph
        raise AssertionError(f"no connected cubic graph on {n} vertices near seed {seed}")

    return make
