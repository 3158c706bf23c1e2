from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Union

from core.graph import EdgeSet, Graph, GraphProfile


class Verdict(str, Enum):
    HAS_HIST = "HasHist"
    NO_HIST = "NoHist"
    BUDGET_EXCEEDED = "BudgetExceeded"


class FilterVerdict(str, Enum):
    NO_HIST = "NoHist"
    INCONCLUSIVE = "Inconclusive"


class SolveMode(str, Enum):
    DECIDE = "decide"
    FIRST = "first"
    COUNT = "count"
    ENUMERATE_ALL = "all"


class FilterUsed(str, Enum):
    NONE = "None"
    MOD4 = "Mod4"
    FACIAL = "Facial"


@dataclass(frozen=True)
class HistCertificate:
    """A verified Hist: tree edge set plus leaf and branch counts."""

    tree_edges: EdgeSet
    t1: int
    t3: int

    def leaves(self, graph: Graph) -> tuple[int, ...]:
        deg = self.tree_edges.degrees(graph)
        return tuple(v for v in range(graph.n) if deg[v] == 1)


@dataclass(frozen=True)
class TwoRegularSubgraph:
    """Vertex-disjoint union of cycles, each given as a vertex sequence."""

    cycles: tuple[tuple[int, ...], ...]
    covered: frozenset[int]
    edge_set: EdgeSet

    @property
    def vertex_count(self) -> int:
        return len(self.covered)


@dataclass
class SolveReport:
    verdict: Verdict
    certificates: list[HistCertificate] = field(default_factory=list)
    count: Optional[int] = None
    nodes_explored: int = 0
    filter_used: FilterUsed = FilterUsed.NONE
    halin_count: Optional[int] = None

    def to_dict(self, graph: Graph) -> dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "count": self.count,
            "nodes_explored": self.nodes_explored,
            "filter_used": self.filter_used.value,
            "halin_count": self.halin_count,
            "certificates": [
                [list(pair) for pair in cert.tree_edges.pairs(graph)] for cert in self.certificates
            ],
        }


@dataclass(frozen=True)
class Orientation:
    """Direction bit per host edge: True means lower index -> higher index."""

    forward: tuple[bool, ...]
    indegree: tuple[int, ...]
    outdegree: tuple[int, ...]

    @classmethod
    def from_bits(cls, graph: Graph, forward: list[bool]) -> "Orientation":
        indeg = [0] * graph.n
        outdeg = [0] * graph.n
        for (u, v), fwd in zip(graph.edges, forward):
            tail, head = (u, v) if fwd else (v, u)
            outdeg[tail] += 1
            indeg[head] += 1
        return cls(tuple(forward), tuple(indeg), tuple(outdeg))

    def arc(self, graph: Graph, edge: int) -> tuple[int, int]:
        u, v = graph.edges[edge]
        return (u, v) if self.forward[edge] else (v, u)

    def reversed(self, graph: Graph) -> "Orientation":
        return Orientation.from_bits(graph, [not f for f in self.forward])


@dataclass(frozen=True)
class RotationSystem:
    """Per-vertex cyclic order of incident edge indices."""

    rotations: tuple[tuple[int, ...], ...]

    @classmethod
    def from_neighbor_orders(cls, graph: Graph, orders: list[list[int]]) -> "RotationSystem":
        return cls(tuple(
            tuple(graph.edge_index(v, w) for w in order) for v, order in enumerate(orders)
        ))

    def neighbor_orders(self, graph: Graph) -> list[list[int]]:
        return [[graph.other(e, v) for e in rot] for v, rot in enumerate(self.rotations)]


@dataclass(frozen=True)
class FaceSet:
    """Face walks as arc sequences; each arc is (tail, head)."""

    faces: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def lengths(self) -> list[int]:
        return [len(face) for face in self.faces]

    def histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for length in self.lengths:
            hist[length] = hist.get(length, 0) + 1
        return dict(sorted(hist.items()))

    def vertex_cycles(self) -> list[tuple[int, ...]]:
        return [tuple(tail for tail, _ in face) for face in self.faces]


@dataclass(frozen=True)
class EmbeddedGraph:
    graph: Graph
    rotation: RotationSystem
    provenance: dict[str, Any] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class InflationResult:
    inflated: Graph
    factor: TwoRegularSubgraph
    # vertex_map[v] = (base vertex x, position of v on C_x)
    vertex_map: tuple[tuple[int, int], ...]
    coloring: Optional[tuple[int, ...]] = None
    orientation: Optional[Orientation] = None


@dataclass
class CutReport:
    """cec result. value is an int, "Infinite" or "Undefined"."""

    value: Union[int, str]
    witness_cut: Optional[EdgeSet] = None
    witness_cycles: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    method: str = "cycle-pair-flow"
    capped: bool = False
    # exact when not capped; otherwise cec lies in [lower_bound, value]
    lower_bound: Optional[int] = None

    def to_dict(self, graph: Graph) -> dict[str, Any]:
        return {
            "cec": self.value,
            "witness_cut": [list(p) for p in self.witness_cut.pairs(graph)] if self.witness_cut else None,
            "witness_cycles": [list(c) for c in self.witness_cycles] if self.witness_cycles else None,
            "method": self.method,
            "capped": self.capped,
            "lower_bound": self.lower_bound,
        }


UNDEFINED = "Undefined"
INFINITE = "Infinite"


@dataclass
class InflationCheck:
    connectivity: int
    girth: Union[int, str]
    k_star: int
    cec: Union[int, str]
    passed: bool
    capped: bool = False
    cut: Optional[CutReport] = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "connectivity": self.connectivity,
            "girth": self.girth,
            "k_star": self.k_star,
            "cec": self.cec,
            "passed": self.passed,
            "capped": self.capped,
        }


@dataclass
class RunReport:
    """One CLI result. Every field is JSON-serializable via to_dict()."""

    input: dict[str, Any]
    profile: Optional[GraphProfile] = None
    filters: dict[str, str] = field(default_factory=dict)
    solve: Optional[dict[str, Any]] = None
    cut: Optional[dict[str, Any]] = None
    embedding: Optional[dict[str, Any]] = None
    wall_time: float = 0.0
    tool_version: str = ""
    error: Optional[dict[str, Any]] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "input": self.input,
            "profile": self.profile.to_dict() if self.profile else None,
            "filters": self.filters,
            "solve": self.solve,
            "cut": self.cut,
            "embedding": self.embedding,
            "wall_time": round(self.wall_time, 6),
            "tool_version": self.tool_version,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunReport":
        profile = data.get("profile")
        return cls(
            input=dict(data.get("input") or {}),
            profile=GraphProfile(
                n=profile["n"],
                m=profile["m"],
                is_cubic=profile["is_cubic"],
                is_connected=profile["is_connected"],
                is_bipartite=profile["is_bipartite"],
                bipartition=tuple(profile["bipartition"]) if profile["bipartition"] is not None else None,
                girth=profile["girth"],
            ) if profile else None,
            filters=dict(data.get("filters") or {}),
            solve=data.get("solve"),
            cut=data.get("cut"),
            embedding=data.get("embedding"),
            wall_time=float(data.get("wall_time", 0.0)),
            tool_version=str(data.get("tool_version", "")),
            error=data.get("error"),
        )
