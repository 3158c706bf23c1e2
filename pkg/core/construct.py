"""Graph constructions: inflations, Eulerian orientations, bipartite
inflations, random regular bases, honeycomb tori and ring insertion.

Every function is pure given its inputs and seed.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import networkx as nx

import config
from core.cyclic import cyclic_edge_connectivity, vertex_connectivity
from core.errors import (
    CutNotWellDefined,
    DegenerateWrap,
    Disconnected,
    InputError,
    InternalError,
    KTooSmall,
    MinDegreeTooLow,
    NotChordlessSixCycle,
    NotCubic,
    NotRegularEven,
    OddDegreeVertex,
    ParallelEdge,
    ParameterTooSmall,
    ParityViolation,
    RejectionLimitExceeded,
    ResultNotHexangulation,
    VertexOutOfRange,
)
from core.graph import ACYCLIC, Graph, GraphProfile, classify, girth
from core.hist import mod4_filter, two_regular_from_cycles
from core.topology import is_hexangulation
from core.types import (
    EmbeddedGraph,
    FilterVerdict,
    InflationResult,
    Orientation,
    RotationSystem,
)

_log = logging.getLogger("histlab.construct")


# --- inflation ---

def _check_base(base: Graph) -> None:
    low = [v for v in range(base.n) if base.degree(v) < 3]
    if low:
        v = low[0]
        raise MinDegreeTooLow(f"vertex {v} has degree {base.degree(v)} < 3", vertex=v, degree=base.degree(v))
    if not base.is_connected():
        raise Disconnected("base graph is not connected")


def _expand(base: Graph, orders: Sequence[Sequence[int]]) -> InflationResult:
    """Replace vertex x by a cycle whose p-th vertex carries the edge to orders[x][p]."""
    offsets = list(itertools.accumulate((len(order) for order in orders), initial=0))
    position = [{y: p for p, y in enumerate(order)} for order in orders]

    vertex_map: list[tuple[int, int]] = []
    edges: list[tuple[int, int]] = []
    cycles: list[list[int]] = []
    for x, order in enumerate(orders):
        d = len(order)
        cycle = [offsets[x] + p for p in range(d)]
        cycles.append(cycle)
        vertex_map.extend((x, p) for p in range(d))
        edges.extend((cycle[p], cycle[(p + 1) % d]) for p in range(d))
    for x, y in base.edges:
        edges.append((offsets[x] + position[x][y], offsets[y] + position[y][x]))

    inflated = Graph.from_edges(offsets[-1], edges)
    factor = two_regular_from_cycles(inflated, cycles)
    return InflationResult(inflated, factor, tuple(vertex_map))


def inflate(base: Graph, seed: Optional[int] = None) -> InflationResult:
    """Inflation of a connected graph with minimum degree >= 3.

    Each base vertex's neighbours go around its cycle in ascending order,
    or in a seeded shuffle when seed is given.
    """
    _check_base(base)
    orders = [list(base.neighbors(x)) for x in range(base.n)]
    if seed is not None:
        rng = random.Random(seed)
        for order in orders:
            rng.shuffle(order)
    result = _expand(base, orders)
    _log.debug("inflate n=%d -> %d vertices (seed=%s)", base.n, result.inflated.n, seed)
    return result


def contract_factor(result: InflationResult) -> Graph:
    """Contract every factor cycle back to its base vertex."""
    graph = result.inflated
    base_n = 1 + max((x for x, _ in result.vertex_map), default=-1)
    edges = [
        (result.vertex_map[u][0], result.vertex_map[v][0])
        for idx, (u, v) in enumerate(graph.edges)
        if idx not in result.factor.edge_set
    ]
    return Graph.from_edges(base_n, edges)


# --- orientations ---

def eulerian_orientation(graph: Graph) -> Orientation:
    """Orient every edge along an Eulerian circuit of its component."""
    for v in range(graph.n):
        if graph.degree(v) % 2:
            raise OddDegreeVertex(v, graph.degree(v))

    nxg = graph.to_networkx()
    forward = [True] * graph.m
    for component in sorted(nx.connected_components(nxg), key=min):
        if len(component) == 1:
            continue
        sub = nxg.subgraph(component)
        for u, v in nx.eulerian_circuit(sub, source=min(component)):
            forward[graph.edge_index(u, v)] = u < v
    return Orientation.from_bits(graph, forward)


def bipartite_inflate(base: Graph, k: int) -> InflationResult:
    """Bipartite cubic inflation of a connected 2k-regular graph, k >= 2.

    Around each base cycle the external arcs alternate in/out, and each
    cycle edge points from its outward port to its inward port, so every
    vertex ends with outdegree 3 or indegree 3. The two classes are the
    bipartition.
    """
    if k < 2:
        raise KTooSmall(f"k must be at least 2, got {k}", k=k)
    bad = [v for v in range(base.n) if base.degree(v) != 2 * k]
    if bad:
        v = bad[0]
        raise NotRegularEven(f"vertex {v} has degree {base.degree(v)}, expected {2 * k}", vertex=v, k=k)
    if not base.is_connected():
        raise Disconnected("base graph is not connected")

    orientation = eulerian_orientation(base)
    orders: list[list[int]] = []
    outward: list[set[int]] = []
    for x in range(base.n):
        ins, outs = [], []
        for edge in base.incidence[x]:
            tail, head = orientation.arc(base, edge)
            if tail == x:
                outs.append(head)
            else:
                ins.append(tail)
        ins.sort()
        outs.sort()
        orders.append([y for pair in zip(ins, outs) for y in pair])
        outward.append(set(outs))

    result = _expand(base, orders)
    graph = result.inflated
    is_out = [orders[x][p] in outward[x] for x, p in result.vertex_map]

    forward = []
    for u, v in graph.edges:
        xu, xv = result.vertex_map[u][0], result.vertex_map[v][0]
        if xu != xv:
            # external edge: follow the base arc
            forward.append(is_out[u])
        else:
            if is_out[u] == is_out[v]:
                _log.error("factor edge (%d, %d) joins two ports of the same type", u, v)
                raise InternalError("interleaving failed; in/out ports do not alternate")
            forward.append(is_out[u])
    arcs = Orientation.from_bits(graph, forward)
    coloring = tuple(0 if out else 1 for out in is_out)

    _log.debug("bipartite_inflate n=%d k=%d -> %d vertices", base.n, k, graph.n)
    return InflationResult(graph, result.factor, result.vertex_map, coloring, arcs)


# --- random bases ---

def _pairing(n: int, d: int, rng: random.Random, limit: int) -> set[tuple[int, int]]:
    points = [v for v in range(n) for _ in range(d)]
    for attempt in range(1, limit + 1):
        rng.shuffle(points)
        pairs: set[tuple[int, int]] = set()
        for a, b in zip(points[0::2], points[1::2]):
            if a == b:
                break
            pair = (a, b) if a < b else (b, a)
            if pair in pairs:
                break
            pairs.add(pair)
        else:
            _log.debug("pairing model n=%d d=%d accepted on attempt %d", n, d, attempt)
            return pairs
    raise RejectionLimitExceeded(f"no simple {d}-regular pairing on {n} vertices after {limit} tries",
                                 n=n, d=d, limit=limit)


def random_regular(n: int, d: int, seed: int, limit: Optional[int] = None) -> Graph:
    """Simple d-regular graph on n vertices from the pairing model.

    Dense cases sample the (n-1-d)-regular complement instead, which keeps
    the rejection rate down.
    """
    if not 0 <= d < n:
        raise InputError(f"degree {d} must satisfy 0 <= d < n={n}", n=n, d=d)
    if n * d % 2:
        raise ParityViolation(f"n*d = {n * d} is odd", n=n, d=d)
    limit = config.HISTLAB_REJECTION_LIMIT if limit is None else limit
    rng = random.Random(seed)

    complement_degree = n - 1 - d
    if complement_degree < d:
        missing = _pairing(n, complement_degree, rng, limit)
        edges = [pair for pair in itertools.combinations(range(n), 2) if pair not in missing]
    else:
        edges = sorted(_pairing(n, d, rng, limit))
    return Graph.from_edges(n, edges)


# --- embedded families ---

def honeycomb_torus(m: int, n: int) -> EmbeddedGraph:
    """Brick-wall hexangulation of the torus with m rows of 2n vertices.

    Vertex (i, j) has id i*2n + j. Row edges join (i, j) and (i, j+1).
    (i, j) with i+j even has an up edge to (i+1, j); the top row wraps to
    row 0 shifted by m mod 2 columns so parity and cubicity survive odd m.
    """
    if m < 2 or n < 2:
        raise ParameterTooSmall(f"honeycomb_torus needs m >= 2 and n >= 2, got ({m}, {n})", m=m, n=n)
    width = 2 * n
    shift = m % 2

    def vid(i: int, j: int) -> int:
        return i * width + j % width

    edges = []
    up: dict[int, int] = {}
    for i in range(m):
        for j in range(width):
            edges.append((vid(i, j), vid(i, j + 1)))
            if (i + j) % 2 == 0:
                target = vid(i + 1, j) if i + 1 < m else vid(0, j + shift)
                up[vid(i, j)] = target
                edges.append((vid(i, j), target))
    # m = 2 is simple too: row 0 goes up from even columns, row 1 wraps down from odd ones
    try:
        graph = Graph.from_edges(m * width, edges)
    except ParallelEdge as exc:
        raise DegenerateWrap(f"wrap for ({m}, {n}) repeats an edge", m=m, n=n) from exc

    down = {w: v for v, w in up.items()}
    orders = []
    for i in range(m):
        for j in range(width):
            v = vid(i, j)
            right, left = vid(i, j + 1), vid(i, j - 1)
            orders.append([right, up[v], left] if v in up else [right, left, down[v]])
    rotation = RotationSystem.from_neighbor_orders(graph, orders)
    return EmbeddedGraph(graph, rotation, {"generator": "honeycomb_torus", "params": {"m": m, "n": n}})


def honeycomb_row_cycle(m: int, n: int, row: int) -> list[int]:
    """Row `row` of honeycomb_torus(m, n) in cyclic order."""
    if not 0 <= row < m:
        raise VertexOutOfRange(f"row {row} outside 0..{m - 1}", row=row)
    return [row * 2 * n + j for j in range(2 * n)]


def _check_ring_cycle(graph: Graph, cycle: Sequence[int]) -> None:
    if len(cycle) != 6 or len(set(cycle)) != 6 or not all(0 <= v < graph.n for v in cycle):
        raise NotChordlessSixCycle(f"{list(cycle)} is not six distinct vertices")
    for j in range(6):
        if not graph.has_edge(cycle[j], cycle[(j + 1) % 6]):
            raise NotChordlessSixCycle(f"({cycle[j]}, {cycle[(j + 1) % 6]}) is not an edge")
    for a, b in itertools.combinations(range(6), 2):
        if (b - a) % 6 not in (1, 5) and graph.has_edge(cycle[a], cycle[b]):
            raise NotChordlessSixCycle(f"chord ({cycle[a]}, {cycle[b]})", chord=[cycle[a], cycle[b]])


def _rotate_three(nxt: int, prev: int, third: int, third_right: bool) -> list[int]:
    return [nxt, third, prev] if third_right else [nxt, prev, third]


def insert_ring(embedded: EmbeddedGraph, cycle: Sequence[int]) -> EmbeddedGraph:
    """Cut along a chordless 6-cycle and glue in a 12-vertex hexagonal cylinder.

    The third edges at the cycle must alternate between its two sides.
    After the cut the original vertices keep the left-hand third edges and
    a copy C' takes the right-hand ones; a middle 6-cycle R joins them,
    with rungs c(j)-R(j) at right positions and R(j)-C'(j) at left ones.
    """
    graph = embedded.graph
    if not graph.is_cubic():
        raise NotCubic("insert_ring needs a cubic graph")
    _check_ring_cycle(graph, cycle)
    ok, genus_before = is_hexangulation(graph, embedded.rotation)
    if not ok:
        raise InputError("insert_ring needs a hexangulation")

    orders = embedded.rotation.neighbor_orders(graph)
    c = list(cycle)
    third: list[int] = []
    right: list[bool] = []
    for j in range(6):
        v, nxt, prev = c[j], c[(j + 1) % 6], c[j - 1]
        w = next(x for x in orders[v] if x not in (nxt, prev))
        rot = orders[v]
        third.append(w)
        right.append(rot[(rot.index(nxt) + 1) % 3] == w)
    if any(right[j] == right[(j + 1) % 6] for j in range(6)):
        raise CutNotWellDefined(f"third edges along {c} do not alternate sides", sides=right)

    n = graph.n
    copy = [n + j for j in range(6)]
    ring = [n + 6 + j for j in range(6)]
    orders.extend([] for _ in range(12))
    edges = [e for e in graph.edges]

    for j in range(6):
        nxt_j, prev_j = (j + 1) % 6, (j - 1) % 6
        edges.append((copy[j], copy[nxt_j]))
        edges.append((ring[j], ring[nxt_j]))
        if right[j]:
            w = third[j]
            edges.remove((min(c[j], w), max(c[j], w)))
            edges.append((copy[j], w))
            edges.append((c[j], ring[j]))
            orders[w][orders[w].index(c[j])] = copy[j]
            orders[c[j]][orders[c[j]].index(w)] = ring[j]
            orders[ring[j]] = _rotate_three(ring[nxt_j], ring[prev_j], c[j], False)
            orders[copy[j]] = _rotate_three(copy[nxt_j], copy[prev_j], w, True)
        else:
            edges.append((ring[j], copy[j]))
            orders[ring[j]] = _rotate_three(ring[nxt_j], ring[prev_j], copy[j], True)
            orders[copy[j]] = _rotate_three(copy[nxt_j], copy[prev_j], ring[j], False)

    grown = Graph.from_edges(n + 12, edges)
    rotation = RotationSystem.from_neighbor_orders(grown, orders)
    ok, genus_after = is_hexangulation(grown, rotation)
    if not ok or genus_after != genus_before:
        _log.error("insert_ring on %s produced hexangulation=%s genus %s -> %s", c, ok, genus_before, genus_after)
        raise ResultNotHexangulation(f"ring insertion along {c} broke the hexangulation")

    provenance = {
        "generator": "insert_ring",
        "params": {"cycle": c},
        "parent": dict(embedded.provenance),
    }
    return EmbeddedGraph(grown, rotation, provenance)


def fullerene_family_vertex_count(k: int) -> int:
    """Order of the k-th member of the gadget fullerene family."""
    if k < 0:
        raise ParameterTooSmall(f"k must be non-negative, got {k}", k=k)
    return 36 * k + 46


def hexangulation_family_vertex_count(k: int) -> int:
    if k < 0:
        raise ParameterTooSmall(f"k must be non-negative, got {k}", k=k)
    return 12 * k + 10


# --- bipartite witness pipeline ---

@dataclass
class WitnessReport:
    k: int
    seed: int
    tries: int
    base: GraphProfile
    inflated: GraphProfile
    n_mod_4: int
    cec: Any
    cec_capped: bool
    cec_at_least_k: bool
    mod4_verdict: FilterVerdict

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "seed": self.seed,
            "tries": self.tries,
            "base": self.base.to_dict(),
            "inflated": self.inflated.to_dict(),
            "n_mod_4": self.n_mod_4,
            "cec": self.cec,
            "cec_capped": self.cec_capped,
            "cec_at_least_k": self.cec_at_least_k,
            "mod4_verdict": self.mod4_verdict.value,
        }


def cyclic_bipartite_witness(
    k: int,
    seed: int,
    max_tries: int = 50,
    base_n: Optional[int] = None,
    max_len: Optional[int] = None,
) -> tuple[InflationResult, WitnessReport]:
    """Bipartite cubic graph with n = 0 (mod 4) and measured cec >= k.

    Draws 4k-regular bases until one is k-connected with girth >= k,
    inflates it with parameter 2k and measures cec. Desk scale means k <= 2.
    """
    if k < 1:
        raise ParameterTooSmall(f"k must be at least 1, got {k}", k=k)
    degree = 4 * k
    base_n = degree + 2 if base_n is None else base_n
    for attempt in range(max_tries):
        base = random_regular(base_n, degree, seed + attempt)
        if not nx.is_connected(base.to_networkx()):
            continue
        base_girth = girth(base)
        if vertex_connectivity(base) < k or (base_girth != ACYCLIC and base_girth < k):
            continue
        result = bipartite_inflate(base, 2 * k)
        cut = cyclic_edge_connectivity(result.inflated, max_len=max_len)
        at_least = isinstance(cut.value, int) and cut.value >= k
        report = WitnessReport(
            k=k,
            seed=seed,
            tries=attempt + 1,
            base=classify(base),
            inflated=classify(result.inflated),
            n_mod_4=result.inflated.n % 4,
            cec=cut.value,
            cec_capped=cut.capped,
            cec_at_least_k=at_least,
            mod4_verdict=mod4_filter(result.inflated),
        )
        _log.info("witness k=%d found after %d tries: n=%d cec=%s", k, attempt + 1, result.inflated.n, cut.value)
        return result, report
    raise RejectionLimitExceeded(f"no suitable {degree}-regular base in {max_tries} tries", k=k, tries=max_tries)
