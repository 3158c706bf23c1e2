"""Core graph representation shared by every histlab module.

Vertices are dense integers 0..n-1. Edges are stored once, as (u, v) with
u < v, sorted lexicographically; an edge's position in that list is its
index, which is what EdgeSet bitsets and rotation systems refer to.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Optional, Union

import networkx as nx

from core.errors import (
    EdgeIndexOutOfRange,
    HostMismatch,
    ParallelEdge,
    SelfLoop,
    VertexOutOfRange,
)

_log = logging.getLogger("histlab.graph")

ACYCLIC: Literal["acyclic"] = "acyclic"
Girth = Union[int, Literal["acyclic"]]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with canonical edge indexing. Immutable."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    incidence: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _index: dict[tuple[int, int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise VertexOutOfRange(f"negative vertex count {self.n}")
        neighbors: list[list[int]] = [[] for _ in range(self.n)]
        incident: list[list[int]] = [[] for _ in range(self.n)]
        previous: Optional[tuple[int, int]] = None
        for idx, (u, v) in enumerate(self.edges):
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}", vertex=u)
            if not (0 <= u < v < self.n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{self.n - 1} or not normalized", edge=[u, v])
            if previous is not None and (u, v) <= previous:
                raise ParallelEdge(f"edge ({u}, {v}) repeated or out of order", edge=[u, v])
            previous = (u, v)
            neighbors[u].append(v)
            neighbors[v].append(u)
            incident[u].append(idx)
            incident[v].append(idx)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(nbrs)) for nbrs in neighbors))
        object.__setattr__(self, "incidence", tuple(tuple(inc) for inc in incident))
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.edges)})

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Normalize endpoints and order, then build. Duplicates still raise."""
        normalized = []
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}", vertex=u)
            normalized.append((u, v) if u < v else (v, u))
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise ParallelEdge(f"parallel edge {a}", edge=list(a))
        return cls(n, tuple(normalized))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Re-index nodes densely in sorted order."""
        order = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(order)}
        return cls.from_edges(len(order), ((index[u], index[v]) for u, v in graph.edges()))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._index

    def edge_index(self, u: int, v: int) -> int:
        key = (min(u, v), max(u, v))
        try:
            return self._index[key]
        except KeyError:
            raise EdgeIndexOutOfRange(f"({u}, {v}) is not an edge", edge=[u, v]) from None

    def other(self, edge: int, v: int) -> int:
        a, b = self.edges[edge]
        return b if a == v else a

    def is_cubic(self) -> bool:
        return all(len(nbrs) == 3 for nbrs in self.adjacency)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return nx.is_connected(self.to_networkx())

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    def relabel(self, permutation: list[int]) -> "Graph":
        """Return the copy where vertex v becomes permutation[v]."""
        return Graph.from_edges(self.n, ((permutation[u], permutation[v]) for u, v in self.edges))


@dataclass(frozen=True)
class EdgeSet:
    """Bitset over the edge indices of a host graph."""

    host_n: int
    host_m: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.host_m:
            raise EdgeIndexOutOfRange(f"edge set has bits beyond the host's {self.host_m} edges")

    @classmethod
    def empty(cls, graph: Graph) -> "EdgeSet":
        return cls(graph.n, graph.m, 0)

    @classmethod
    def full(cls, graph: Graph) -> "EdgeSet":
        return cls(graph.n, graph.m, (1 << graph.m) - 1)

    @classmethod
    def of(cls, graph: Graph, indices: Iterable[int]) -> "EdgeSet":
        bits = 0
        for idx in indices:
            if not 0 <= idx < graph.m:
                raise EdgeIndexOutOfRange(f"edge index {idx} out of range 0..{graph.m - 1}", index=idx)
            bits |= 1 << idx
        return cls(graph.n, graph.m, bits)

    @classmethod
    def from_pairs(cls, graph: Graph, pairs: Iterable[tuple[int, int]]) -> "EdgeSet":
        return cls.of(graph, (graph.edge_index(u, v) for u, v in pairs))

    def check_host(self, graph: Graph) -> None:
        if self.host_n != graph.n or self.host_m != graph.m:
            raise HostMismatch(
                f"edge set built for n={self.host_n} m={self.host_m}, graph has n={graph.n} m={graph.m}"
            )

    def indices(self) -> tuple[int, ...]:
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, index: object) -> bool:
        return isinstance(index, int) and index >= 0 and bool(self.bits >> index & 1)

    def complement(self) -> "EdgeSet":
        return EdgeSet(self.host_n, self.host_m, ((1 << self.host_m) - 1) ^ self.bits)

    def union(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.host_n, self.host_m, self.bits | other.bits)

    def difference(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.host_n, self.host_m, self.bits & ~other.bits)

    def pairs(self, graph: Graph) -> list[tuple[int, int]]:
        self.check_host(graph)
        return [graph.edges[i] for i in self.indices()]

    def degrees(self, graph: Graph) -> list[int]:
        """Degree of every host vertex counting only edges in the set."""
        deg = [0] * graph.n
        for u, v in self.pairs(graph):
            deg[u] += 1
            deg[v] += 1
        return deg

    def sort_key(self) -> tuple[int, ...]:
        """Lexicographic order on the sorted index tuple."""
        return self.indices()


@dataclass(frozen=True)
class GraphProfile:
    n: int
    m: int
    is_cubic: bool
    is_connected: bool
    is_bipartite: bool
    bipartition: Optional[tuple[int, ...]]
    girth: Girth

    def classes(self) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
        if self.bipartition is None:
            return None
        left = tuple(v for v, c in enumerate(self.bipartition) if c == 0)
        right = tuple(v for v, c in enumerate(self.bipartition) if c == 1)
        return left, right

    def to_dict(self) -> dict[str, object]:
        return {
            "n": self.n,
            "m": self.m,
            "is_cubic": self.is_cubic,
            "is_connected": self.is_connected,
            "is_bipartite": self.is_bipartite,
            "bipartition": list(self.bipartition) if self.bipartition is not None else None,
            "girth": self.girth,
        }


def two_coloring(graph: Graph) -> Optional[tuple[int, ...]]:
    """Proper 2-coloring with the smallest vertex of each component colored 0."""
    nxg = graph.to_networkx()
    if not nx.is_bipartite(nxg):
        return None
    color = nx.bipartite.color(nxg)
    for component in nx.connected_components(nxg):
        if color[min(component)] == 1:
            for v in component:
                color[v] = 1 - color[v]
    return tuple(color[v] for v in range(graph.n))


def girth(graph: Graph) -> Girth:
    value = nx.girth(graph.to_networkx())
    if value == float("inf"):
        return ACYCLIC
    return int(value)


def classify(graph: Graph) -> GraphProfile:
    coloring = two_coloring(graph)
    profile = GraphProfile(
        n=graph.n,
        m=graph.m,
        is_cubic=graph.is_cubic(),
        is_connected=graph.is_connected(),
        is_bipartite=coloring is not None,
        bipartition=coloring,
        girth=girth(graph),
    )
    _log.debug("classify n=%d m=%d cubic=%s bipartite=%s girth=%s",
               graph.n, graph.m, profile.is_cubic, profile.is_bipartite, profile.girth)
    return profile


def induced_edge_subgraph(graph: Graph, edges: EdgeSet) -> tuple[Graph, tuple[int, ...]]:
    """The subgraph ⟨S⟩: vertex set is exactly the end vertices of S.

    Returns the re-indexed graph and the map new index -> original vertex.
    """
    edges.check_host(graph)
    pairs = edges.pairs(graph)
    vertex_map = tuple(sorted({v for pair in pairs for v in pair}))
    local = {v: i for i, v in enumerate(vertex_map)}
    sub = Graph.from_edges(len(vertex_map), ((local[u], local[v]) for u, v in pairs))
    return sub, vertex_map


def components_without(graph: Graph, removed: EdgeSet) -> list[set[int]]:
    """Connected components of graph - removed (all vertices kept)."""
    removed.check_host(graph)
    nxg = nx.Graph()
    nxg.add_nodes_from(range(graph.n))
    nxg.add_edges_from(graph.edges[i] for i in range(graph.m) if i not in removed)
    return [set(c) for c in nx.connected_components(nxg)]


def canonical_cycle(cycle: Iterable[int]) -> tuple[int, ...]:
    """Rotate so the smallest vertex comes first and its smaller neighbor second."""
    seq = list(cycle)
    if len(seq) < 3:
        return tuple(seq)
    start = seq.index(min(seq))
    seq = seq[start:] + seq[:start]
    if seq[-1] < seq[1]:
        seq = [seq[0]] + seq[:0:-1]
    return tuple(seq)
