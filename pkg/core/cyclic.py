"""Cyclic edge-connectivity of cubic graphs.

cec is the minimum over vertex-disjoint pairs of chordless cycles of the
unit-capacity min cut separating them. Any cyclic edge cut leaves a cycle
on each side; a shortest cycle on a side is chordless in the whole graph,
and the min cut separating the two contracted cycles is no larger than the
cut. So the minimum over pairs is exact when no length cap is applied.

Small cut sizes are first ruled out by brute force over edge subsets, which
gives a proven lower bound and lets the pair loop stop as soon as it meets it.
"""

from __future__ import annotations

import itertools
import logging
import math
from typing import Iterable, Optional

import networkx as nx

from core.errors import Disconnected, InputError, OverlappingTerminals, PremiseNotMet
from core.graph import ACYCLIC, EdgeSet, Graph, canonical_cycle, girth
from core.hist import require_cubic
from core.types import INFINITE, UNDEFINED, CutReport, InflationCheck, InflationResult

_log = logging.getLogger("histlab.cyclic")

# brute-force lower bounds only while C(m, size) stays below this
_SUBSET_LIMIT = 20_000


def induced_cycles(graph: Graph, max_len: Optional[int] = None) -> list[tuple[int, ...]]:
    """Chordless cycles in canonical rotation, sorted by (length, vertices)."""
    found = {
        canonical_cycle(cycle)
        for cycle in nx.chordless_cycles(graph.to_networkx(), length_bound=max_len)
        if len(cycle) >= 3
    }
    return sorted(found, key=lambda c: (len(c), c))


def max_flow_unit(graph: Graph, sources: Iterable[int], sinks: Iterable[int]) -> tuple[int, EdgeSet]:
    """Unit-capacity max flow between two contracted vertex sets.

    Returns the flow value and a minimum cut of exactly that many edges.
    """
    s_set, t_set = set(sources), set(sinks)
    if not s_set or not t_set:
        raise InputError("both terminal sets must be non-empty")
    overlap = s_set & t_set
    if overlap:
        raise OverlappingTerminals(f"terminal sets share {sorted(overlap)[:5]}", vertices=sorted(overlap)[:5])

    def node(v: int) -> object:
        if v in s_set:
            return "s"
        if v in t_set:
            return "t"
        return v

    network = nx.DiGraph()
    network.add_nodes_from(("s", "t"))
    for u, v in graph.edges:
        a, b = node(u), node(v)
        if a == b:
            continue
        for tail, head in ((a, b), (b, a)):
            if network.has_edge(tail, head):
                network[tail][head]["capacity"] += 1
            else:
                network.add_edge(tail, head, capacity=1)

    value, (source_side, _) = nx.minimum_cut(network, "s", "t")
    cut = [
        idx for idx, (u, v) in enumerate(graph.edges)
        if (node(u) in source_side) != (node(v) in source_side)
    ]
    return int(value), EdgeSet.of(graph, cut)


def _splits_into_cyclic_parts(graph: Graph, removed: frozenset[int]) -> bool:
    parent = list(range(graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    kept = [e for e in range(graph.m) if e not in removed]
    for e in kept:
        u, v = graph.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    vertices: dict[int, int] = {}
    edges: dict[int, int] = {}
    for v in range(graph.n):
        root = find(v)
        vertices[root] = vertices.get(root, 0) + 1
    for e in kept:
        root = find(graph.edges[e][0])
        edges[root] = edges.get(root, 0) + 1
    cyclic_parts = sum(1 for root, count in vertices.items() if edges.get(root, 0) >= count)
    return cyclic_parts >= 2


def _proven_lower_bound(graph: Graph, start: int) -> int:
    """Smallest size s >= start not ruled out by exhaustive subset checks."""
    size = max(start, 1)
    while size <= graph.m and math.comb(graph.m, size) <= _SUBSET_LIMIT:
        if any(
            _splits_into_cyclic_parts(graph, frozenset(subset))
            for subset in itertools.combinations(range(graph.m), size)
        ):
            return size
        size += 1
    return size


def cyclic_edge_connectivity(graph: Graph, max_len: Optional[int] = None) -> CutReport:
    """cec of a connected cubic graph, or Undefined without two disjoint cycles.

    max_len caps the cycle enumeration; a capped report is an upper bound
    unless it met the proven lower bound.
    """
    require_cubic(graph)
    if not graph.is_connected():
        raise Disconnected("cec needs a connected graph")

    cycles = induced_cycles(graph, max_len)
    vertex_sets = [frozenset(c) for c in cycles]
    lower = _proven_lower_bound(graph, nx.edge_connectivity(graph.to_networkx()))
    truncated = max_len is not None and max_len < graph.n

    best: Optional[tuple[int, EdgeSet, tuple[int, ...], tuple[int, ...]]] = None
    pairs = 0
    for i, j in itertools.combinations(range(len(cycles)), 2):
        if vertex_sets[i] & vertex_sets[j]:
            continue
        pairs += 1
        value, cut = max_flow_unit(graph, vertex_sets[i], vertex_sets[j])
        if best is None or value < best[0]:
            best = (value, cut, cycles[i], cycles[j])
            if value <= lower:
                break

    _log.debug("cec n=%d: %d cycles, %d disjoint pairs tried, lower bound %d",
               graph.n, len(cycles), pairs, lower)
    if best is None:
        return CutReport(UNDEFINED, capped=truncated)
    value, cut, first, second = best
    return CutReport(
        value,
        witness_cut=cut,
        witness_cycles=(first, second),
        capped=truncated and value > lower,
        lower_bound=min(lower, value),
    )


def vertex_connectivity(graph: Graph) -> int:
    if graph.n and not graph.is_connected():
        return 0
    return nx.node_connectivity(graph.to_networkx())


def cyclic_cut_below(graph: Graph, k: int) -> Optional[EdgeSet]:
    """A cyclic edge cut with fewer than k edges, if one exists."""
    for size in range(1, k):
        for subset in itertools.combinations(range(graph.m), size):
            if _splits_into_cyclic_parts(graph, frozenset(subset)):
                return EdgeSet.of(graph, subset)
    return None


def check_inflation_theorem(
    base: Graph,
    result: InflationResult,
    max_len: Optional[int] = None,
) -> InflationCheck:
    """Check cec(inflation) >= min(connectivity, girth) of the base.

    The verdict comes from an exhaustive search for cyclic cuts smaller than
    k*; the reported cec comes from cyclic_edge_connectivity.
    """
    base_vertices = {x for x, _ in result.vertex_map}
    if base_vertices != set(range(base.n)):
        raise InputError("inflation result does not come from this base graph")

    connectivity = vertex_connectivity(base)
    base_girth = girth(base)
    girth_value = math.inf if base_girth == ACYCLIC else base_girth
    k_star = int(min(connectivity, girth_value))
    if k_star < 3:
        raise PremiseNotMet(
            f"k* = min(connectivity {connectivity}, girth {base_girth}) = {k_star} < 3",
            connectivity=connectivity, girth=base_girth, k_star=k_star,
        )

    small_cut = cyclic_cut_below(result.inflated, k_star)
    report = cyclic_edge_connectivity(result.inflated, max_len=max_len)
    passed = small_cut is None
    if not passed:
        _log.error("cyclic cut of size %d below k*=%d in an inflation", len(small_cut), k_star)
    return InflationCheck(
        connectivity=connectivity,
        girth=INFINITE if base_girth == ACYCLIC else base_girth,
        k_star=k_star,
        cec=report.value,
        passed=passed,
        capped=report.capped,
        cut=report,
    )
