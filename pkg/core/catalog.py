"""Named graphs. Numbering is networkx's for the generated ones.

Planar members come back as EmbeddedGraph with the rotation system of
their (unique, 3-connected) plane embedding; the others as Graph.
"""

from __future__ import annotations

import logging
import re
from typing import Callable, Union

import networkx as nx

import config
from core.errors import MissingDataFile, UnknownName
from core.formats import read_graph6_file
from core.graph import Graph
from core.types import EmbeddedGraph, RotationSystem

_log = logging.getLogger("histlab.catalog")

_GENERATORS: dict[str, Callable[[], nx.Graph]] = {
    "k4": lambda: nx.complete_graph(4),
    "k33": lambda: nx.complete_bipartite_graph(3, 3),
    "cube": nx.cubical_graph,
    "petersen": nx.petersen_graph,
    "dodecahedron": nx.dodecahedral_graph,
    "heawood": nx.heawood_graph,
    "moebius_kantor": nx.moebius_kantor_graph,
    "pappus": nx.pappus_graph,
    "desargues": nx.desargues_graph,
    # non-cubic bases for the inflation constructions
    "k5": lambda: nx.complete_graph(5),
    "k7": lambda: nx.complete_graph(7),
    "octahedron": nx.octahedral_graph,
}

_DATA_FILES = {
    "buckminster": "buckminster.g6",
    "grinberg": "grinberg.g6",
}

_PRISM = re.compile(r"^prism[:(](\d+)\)?$")

CATALOG_NAMES = tuple(sorted(_GENERATORS)) + tuple(sorted(_DATA_FILES)) + ("prism:K",)


def _with_embedding(graph: Graph, name: str) -> Union[Graph, EmbeddedGraph]:
    planar, embedding = nx.check_planarity(graph.to_networkx())
    if not planar:
        return graph
    orders = [list(embedding.neighbors_cw_order(v)) for v in range(graph.n)]
    rotation = RotationSystem.from_neighbor_orders(graph, orders)
    return EmbeddedGraph(graph, rotation, {"generator": "catalog", "params": {"name": name}})


def _load_data_graph(name: str) -> Graph:
    path = config.DATA_DIR / _DATA_FILES[name]
    if not path.is_file():
        raise MissingDataFile(f"{name} needs {path}", path=str(path))
    graphs = read_graph6_file(path)
    if not graphs:
        raise MissingDataFile(f"{path} holds no graph", path=str(path))
    _log.debug("loaded %s from %s", name, path)
    return graphs[0]


def catalog(name: str) -> Union[Graph, EmbeddedGraph]:
    key = name.strip().lower()
    match = _PRISM.match(key)
    if match:
        k = int(match.group(1))
        if k < 3:
            raise UnknownName(f"prism needs k >= 3, got {k}", name=name)
        return _with_embedding(Graph.from_networkx(nx.circular_ladder_graph(k)), f"prism:{k}")
    if key in _GENERATORS:
        return _with_embedding(Graph.from_networkx(_GENERATORS[key]()), key)
    if key in _DATA_FILES:
        return _with_embedding(_load_data_graph(key), key)
    raise UnknownName(f"unknown catalog graph {name!r}; known: {', '.join(CATALOG_NAMES)}", name=name)


def catalog_graph(name: str) -> Graph:
    """Like catalog() but always the bare Graph."""
    entry = catalog(name)
    return entry.graph if isinstance(entry, EmbeddedGraph) else entry


def is_catalog_name(name: str) -> bool:
    key = name.strip().lower()
    return key in _GENERATORS or key in _DATA_FILES or bool(_PRISM.match(key))
