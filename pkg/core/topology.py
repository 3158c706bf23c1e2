"""Orientable embeddings given by rotation systems.

Face tracing convention: arc (u, v) is followed by arc (v, w) where w is
the cyclic successor of u in the rotation at v. See docs/formats.md for a
worked K4 example.
"""

from __future__ import annotations

import itertools
import logging
from typing import Any, Optional

import networkx as nx

import config
from core.errors import (
    Disconnected,
    InvalidRotation,
    KOutOfRange,
    NotNonSeparating,
    NotPlanarEmbedding,
    OddEulerDefect,
)
from core.graph import EdgeSet, Graph
from core.hist import hist_from_two_regular, require_cubic_connected, two_regular_from_edges
from core.types import (
    FaceSet,
    FilterUsed,
    FilterVerdict,
    HistCertificate,
    RotationSystem,
    SolveMode,
    SolveReport,
    Verdict,
)

_log = logging.getLogger("histlab.topology")


def _successors(graph: Graph, rotation: RotationSystem) -> list[dict[int, int]]:
    if len(rotation.rotations) != graph.n:
        raise InvalidRotation(f"rotation has {len(rotation.rotations)} vertices, graph has {graph.n}")
    succ: list[dict[int, int]] = []
    for v, rot in enumerate(rotation.rotations):
        if sorted(rot) != sorted(graph.incidence[v]):
            raise InvalidRotation(f"rotation at vertex {v} is not a permutation of its edges", vertex=v)
        nbrs = [graph.other(e, v) for e in rot]
        succ.append({u: nbrs[(i + 1) % len(nbrs)] for i, u in enumerate(nbrs)})
    return succ


def trace_faces(graph: Graph, rotation: RotationSystem) -> FaceSet:
    succ = _successors(graph, rotation)
    seen: set[tuple[int, int]] = set()
    faces = []
    for u, v in graph.edges:
        for start in ((u, v), (v, u)):
            if start in seen:
                continue
            face = []
            arc = start
            while arc not in seen:
                seen.add(arc)
                face.append(arc)
                tail, head = arc
                arc = (head, succ[head][tail])
            faces.append(tuple(face))
    return FaceSet(tuple(faces))


def euler_genus(graph: Graph, rotation: RotationSystem, faces: Optional[FaceSet] = None) -> int:
    if graph.n and not graph.is_connected():
        raise Disconnected("genus is defined for connected graphs only")
    faces = faces or trace_faces(graph, rotation)
    defect = 2 - (graph.n - graph.m + len(faces.faces))
    if defect % 2:
        _log.error("odd Euler defect %d (n=%d m=%d f=%d)", defect, graph.n, graph.m, len(faces.faces))
        raise OddEulerDefect(f"V - E + F leaves odd defect {defect}", defect=defect)
    return defect // 2


def vertex_connectivity_at_least(graph: Graph, k: int) -> bool:
    """True iff deleting any k-1 vertices leaves the graph connected."""
    if not 1 <= k <= 3:
        raise KOutOfRange(f"k must be in 1..3, got {k}", k=k)
    nxg = graph.to_networkx()
    for removed in itertools.combinations(range(graph.n), k - 1):
        rest = nxg.subgraph(set(range(graph.n)) - set(removed))
        if rest.number_of_nodes() == 0 or not nx.is_connected(rest):
            return False
    return True


def is_fullerene(graph: Graph, rotation: RotationSystem) -> tuple[bool, dict[str, Any]]:
    faces = trace_faces(graph, rotation)
    histogram = faces.histogram()
    cubic = graph.is_cubic()
    connected = graph.is_connected()
    genus = euler_genus(graph, rotation, faces) if connected else None
    three_connected = connected and vertex_connectivity_at_least(graph, 3)
    ok = cubic and genus == 0 and three_connected and set(histogram) <= {5, 6}
    report = {
        "cubic": cubic,
        "genus": genus,
        "three_connected": three_connected,
        "face_lengths": histogram,
        "pentagons": histogram.get(5, 0),
        "hexagons": histogram.get(6, 0),
    }
    return ok, report


def is_hexangulation(graph: Graph, rotation: RotationSystem) -> tuple[bool, Optional[int]]:
    """(every face is a hexagon and the graph is 2-connected, genus)."""
    faces = trace_faces(graph, rotation)
    if not graph.is_connected():
        return False, None
    genus = euler_genus(graph, rotation, faces)
    ok = graph.n >= 3 and nx.is_biconnected(graph.to_networkx()) and all(length == 6 for length in faces.lengths)
    return ok, genus


# --- facial Hist search ---

def _facial_cycles(graph: Graph, faces: FaceSet) -> list[tuple[tuple[int, ...], int]]:
    """Faces that are simple cycles, as (vertex walk, edge bits)."""
    out = []
    for face in faces.faces:
        walk = tuple(tail for tail, _ in face)
        if len(set(walk)) != len(walk) or len(walk) < 3:
            continue
        bits = 0
        for tail, head in face:
            bits |= 1 << graph.edge_index(tail, head)
        out.append((walk, bits))
    return out


def _require_plane(graph: Graph, rotation: RotationSystem, faces: FaceSet) -> None:
    genus = euler_genus(graph, rotation, faces)
    if genus != 0:
        raise NotPlanarEmbedding(f"embedding has genus {genus}", genus=genus)


def _subset_sum_reachable(lengths: list[int], target: int) -> bool:
    reachable = 1
    mask = (1 << (target + 1)) - 1
    for length in lengths:
        reachable = (reachable | (reachable << length)) & mask
    return bool(reachable >> target & 1)


def facial_filter(graph: Graph, rotation: RotationSystem) -> FilterVerdict:
    """NoHist when no set of facial cycles has total length n/2 + 1.

    Only meaningful in the plane, where every non-facial cycle separates;
    other genera raise NotPlanarEmbedding.
    """
    faces = trace_faces(graph, rotation)
    _require_plane(graph, rotation, faces)
    lengths = [len(walk) for walk, _ in _facial_cycles(graph, faces)]
    if _subset_sum_reachable(lengths, graph.n // 2 + 1):
        return FilterVerdict.INCONCLUSIVE
    return FilterVerdict.NO_HIST


def planar_hist_solve(
    graph: Graph,
    rotation: RotationSystem,
    mode: SolveMode = SolveMode.DECIDE,
    budget: Optional[int] = None,
) -> SolveReport:
    """Search Hists of a plane cubic graph through facial cycles only."""
    require_cubic_connected(graph)
    faces = trace_faces(graph, rotation)
    _require_plane(graph, rotation, faces)
    budget = config.HISTLAB_BUDGET if budget is None else budget
    counting = mode in (SolveMode.COUNT, SolveMode.ENUMERATE_ALL)
    target = graph.n // 2 + 1

    facial = _facial_cycles(graph, faces)
    if not _subset_sum_reachable([len(walk) for walk, _ in facial], target):
        _log.info("planar_hist_solve n=%d: no face subset sums to %d", graph.n, target)
        return SolveReport(
            Verdict.NO_HIST,
            count=0 if counting else None,
            filter_used=FilterUsed.FACIAL,
            halin_count=0 if counting else None,
        )

    facial.sort(key=lambda item: (len(item[0]), item[0]))
    vertex_sets = [frozenset(walk) for walk, _ in facial]
    found: list[HistCertificate] = []
    nodes = 0
    exhausted = False

    def extend(start: int, used: frozenset[int], bits: int) -> bool:
        nonlocal nodes, exhausted
        if nodes >= budget:
            exhausted = True
            return True
        nodes += 1
        if len(used) == target:
            subgraph = two_regular_from_edges(graph, EdgeSet(graph.n, graph.m, bits))
            try:
                found.append(hist_from_two_regular(graph, subgraph))
            except NotNonSeparating:
                return False
            return not counting
        for i in range(start, len(facial)):
            walk, face_bits = facial[i]
            if len(used) + len(walk) > target or used & vertex_sets[i]:
                continue
            if extend(i + 1, used | vertex_sets[i], bits | face_bits):
                return True
        return False

    extend(0, frozenset(), 0)
    if exhausted:
        return SolveReport(Verdict.BUDGET_EXCEEDED, nodes_explored=nodes)

    found.sort(key=lambda cert: cert.tree_edges.sort_key())
    halin = sum(1 for cert in found if len(two_regular_from_edges(graph, cert.tree_edges.complement()).cycles) == 1)
    _log.info("planar_hist_solve n=%d mode=%s: %d certificates, %d nodes", graph.n, mode.value, len(found), nodes)
    return SolveReport(
        Verdict.HAS_HIST if found else Verdict.NO_HIST,
        certificates=found[:1] if mode is SolveMode.COUNT else found,
        count=len(found) if counting else None,
        nodes_explored=nodes,
        halin_count=halin if counting else None,
    )
