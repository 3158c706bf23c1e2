"""Hist decision, enumeration and certification for cubic graphs.

A Hist (homeomorphically irreducible spanning tree) of a cubic graph has
every tree degree in {1, 3}. Its complement H = E(G) - E(T) is a
non-separating 2-regular subgraph with |V(H)| = n/2 + 1 (t1 = t3 + 2 and
t1 + t3 = n give t1 = n/2 + 1, and the leaves are exactly V(H)).

The converse, which hist_from_two_regular and oracle_enumerate rely on:

    Let H be 2-regular with G - E(H) connected and |V(H)| = n/2 + 1.
    A 2-regular graph has as many edges as vertices, so |E(H)| = n/2 + 1
    and G - E(H) has 3n/2 - (n/2 + 1) = n - 1 edges on all n vertices.
    Being connected, it is a spanning tree T. A vertex of H keeps one
    tree edge and every other vertex keeps all three, so T has no vertex
    of degree 2.

solve() searches the same space edge by edge: every edge is TREE or CYCLE,
every vertex ends with 0 or 2 CYCLE edges, the TREE edges stay a forest and
TREE plus undecided edges must keep the graph connected. The search tree is
cut at a fixed branch depth into subtree jobs, run through JobDispatcher,
and merged in job order so the report does not depend on the worker count.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

import config
from core.dispatcher import JobDispatcher, JobOutcome
from core.errors import (
    ContainsCycle,
    DegreeTwoVertex,
    Disconnected,
    InputError,
    InstanceTooLarge,
    InternalError,
    InvalidCertificate,
    InvalidHist,
    NotCubic,
    NotNonSeparating,
    NotSpanning,
    NotTwoRegular,
    WrongVertexCount,
)
from core.graph import EdgeSet, Graph, canonical_cycle, components_without, two_coloring
from core.types import (
    FilterUsed,
    FilterVerdict,
    HistCertificate,
    SolveMode,
    SolveReport,
    TwoRegularSubgraph,
    Verdict,
)

_log = logging.getLogger("histlab.hist")

UNDECIDED, TREE, CYCLE = 0, 1, 2


def require_cubic(graph: Graph) -> None:
    bad = [v for v in range(graph.n) if graph.degree(v) != 3]
    if bad:
        raise NotCubic(f"vertex {bad[0]} has degree {graph.degree(bad[0])}", vertex=bad[0])


def require_cubic_connected(graph: Graph) -> None:
    require_cubic(graph)
    if not graph.is_connected():
        raise Disconnected(f"graph with n={graph.n} is not connected")


# --- certificates and their complements ---

def verify_hist(graph: Graph, tree_edges: EdgeSet) -> HistCertificate:
    """Check that tree_edges is a Hist of graph and return its certificate."""
    require_cubic(graph)
    tree_edges.check_host(graph)
    deg = tree_edges.degrees(graph)

    untouched = [v for v in range(graph.n) if deg[v] == 0]
    if untouched:
        raise NotSpanning(f"vertex {untouched[0]} is not covered by the tree", vertices=untouched[:5])

    forest = nx.utils.UnionFind(range(graph.n))
    for u, v in tree_edges.pairs(graph):
        if forest[u] == forest[v]:
            raise ContainsCycle(f"edge ({u}, {v}) closes a cycle", edge=[u, v])
        forest.union(u, v)
    if len(tree_edges) != graph.n - 1:
        raise Disconnected(
            f"tree edges form {graph.n - len(tree_edges)} components",
            components=graph.n - len(tree_edges),
        )

    for v in range(graph.n):
        if deg[v] == 2:
            raise DegreeTwoVertex(v)
    t1 = sum(1 for d in deg if d == 1)
    return HistCertificate(tree_edges, t1, graph.n - t1)


def two_regular_from_edges(graph: Graph, edges: EdgeSet) -> TwoRegularSubgraph:
    """Split a 2-regular edge set into its cycles (canonical rotation, sorted)."""
    edges.check_host(graph)
    deg = edges.degrees(graph)
    for v, d in enumerate(deg):
        if d not in (0, 2):
            raise NotTwoRegular(f"vertex {v} has degree {d} in the subgraph", vertex=v, degree=d)

    nbrs: dict[int, list[int]] = {}
    for u, v in edges.pairs(graph):
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)

    seen: set[int] = set()
    cycles = []
    for start in sorted(nbrs):
        if start in seen:
            continue
        walk = [start]
        seen.add(start)
        prev, cur = start, nbrs[start][0]
        while cur != start:
            walk.append(cur)
            seen.add(cur)
            a, b = nbrs[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(canonical_cycle(walk))
    cycles.sort()
    return TwoRegularSubgraph(tuple(cycles), frozenset(nbrs), edges)


def two_regular_from_cycles(graph: Graph, cycles: list[list[int]]) -> TwoRegularSubgraph:
    """Build from vertex sequences; consecutive vertices must be adjacent."""
    pairs = []
    for cycle in cycles:
        if len(cycle) < 3:
            raise NotTwoRegular(f"cycle {list(cycle)} has fewer than 3 vertices")
        pairs.extend(zip(cycle, list(cycle[1:]) + [cycle[0]]))
    subgraph = two_regular_from_edges(graph, EdgeSet.from_pairs(graph, pairs))
    if subgraph.vertex_count != sum(len(c) for c in cycles):
        raise NotTwoRegular("cycles are not vertex-disjoint")
    return subgraph


def complement_of_hist(graph: Graph, cert: HistCertificate) -> TwoRegularSubgraph:
    try:
        verified = verify_hist(graph, cert.tree_edges)
    except InvalidHist as exc:
        raise InvalidCertificate(f"certificate fails verification: {exc}", reason=type(exc).__name__) from exc
    if (verified.t1, verified.t3) != (cert.t1, cert.t3):
        raise InvalidCertificate(
            f"certificate claims t1={cert.t1} t3={cert.t3}, tree has t1={verified.t1} t3={verified.t3}"
        )

    complement = two_regular_from_edges(graph, cert.tree_edges.complement())
    if complement.covered != frozenset(cert.leaves(graph)) or complement.vertex_count != graph.n // 2 + 1:
        _log.error("complement of a verified Hist has the wrong vertex set (n=%d)", graph.n)
        raise InternalError("complement vertex set differs from the leaf set")
    return complement


def hist_from_two_regular(graph: Graph, subgraph: TwoRegularSubgraph) -> HistCertificate:
    require_cubic_connected(graph)
    subgraph.edge_set.check_host(graph)
    checked = two_regular_from_edges(graph, subgraph.edge_set)
    if checked.covered != subgraph.covered:
        raise NotTwoRegular("declared covered vertices differ from the edge set's end vertices")

    target = graph.n // 2 + 1
    if checked.vertex_count != target:
        raise WrongVertexCount(
            f"subgraph covers {checked.vertex_count} vertices, need n/2+1 = {target}",
            covered=checked.vertex_count, expected=target,
        )
    parts = components_without(graph, subgraph.edge_set)
    if len(parts) != 1:
        raise NotNonSeparating(f"removing the subgraph leaves {len(parts)} components", components=len(parts))

    try:
        return verify_hist(graph, subgraph.edge_set.complement())
    except InvalidHist as exc:
        _log.error("converse construction produced a non-Hist: %s", exc)
        raise InternalError(f"complement of a valid subgraph is not a Hist: {exc}") from exc


def is_halin_certificate(graph: Graph, cert: HistCertificate) -> bool:
    """True when the leaves induce a single cycle of the complement."""
    return len(complement_of_hist(graph, cert).cycles) == 1


def certificate_stats(graph: Graph, cert: HistCertificate) -> dict[str, object]:
    complement = complement_of_hist(graph, cert)
    return {
        "t1": cert.t1,
        "t3": cert.t3,
        "cycles": len(complement.cycles),
        "cycle_lengths": sorted(len(c) for c in complement.cycles),
        "halin": len(complement.cycles) == 1,
    }


def mod4_filter(graph: Graph) -> FilterVerdict:
    """NoHist when g is bipartite with n = 0 (mod 4); a Hist forces n = 2 (mod 4)."""
    require_cubic(graph)
    if graph.n % 4 == 0 and two_coloring(graph) is not None:
        return FilterVerdict.NO_HIST
    return FilterVerdict.INCONCLUSIVE


# --- search ---

@dataclass
class _SearchState:
    status: list[int]
    tree_deg: list[int]
    cycle_deg: list[int]
    parent: list[int]
    n_tree: int = 0
    n_cycle: int = 0
    open_edges: int = 0

    @classmethod
    def initial(cls, n: int, m: int) -> "_SearchState":
        return cls([UNDECIDED] * m, [0] * n, [0] * n, list(range(n)), 0, 0, m)

    def copy(self) -> "_SearchState":
        return _SearchState(
            self.status[:], self.tree_deg[:], self.cycle_deg[:], self.parent[:],
            self.n_tree, self.n_cycle, self.open_edges,
        )

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while v != root:
            nxt = parent[v]
            parent[v] = root
            v = nxt
        return root


def _index_key(bits: int) -> tuple[int, ...]:
    return tuple(i for i in range(bits.bit_length()) if bits >> i & 1)


@dataclass
class _SubtreeResult:
    nodes: int
    exhausted: bool
    solutions: list[int] = field(default_factory=list)
    count: int = 0
    halin: int = 0


class _Search:
    """Depth-first search with unit propagation over one graph."""

    def __init__(self, graph: Graph, mode: SolveMode, limit: int) -> None:
        self.n = graph.n
        self.ends = graph.edges
        self.incidence = graph.incidence
        self.limit = limit
        self.target_cycle = graph.n // 2 + 1
        self.target_tree = graph.n - 1
        self.stop_at_first = mode in (SolveMode.DECIDE, SolveMode.FIRST)
        self.keep = mode is not SolveMode.COUNT
        # count mode still keeps the least solution as its witness
        self.keep_least = mode is SolveMode.COUNT
        self.track_halin = mode in (SolveMode.COUNT, SolveMode.ENUMERATE_ALL)

        self.nodes = 0
        self.exhausted = False
        self.solutions: list[int] = []
        self.count = 0
        self.halin = 0

    def root(self) -> Optional[_SearchState]:
        state = _SearchState.initial(self.n, len(self.ends))
        return state if self.propagate(state, []) else None

    # propagation

    def propagate(self, st: _SearchState, pending: list[tuple[int, int]]) -> bool:
        """Apply assignments and everything they force. False on conflict."""
        while True:
            while pending:
                edge, value = pending.pop()
                current = st.status[edge]
                if current != UNDECIDED:
                    if current != value:
                        return False
                    continue
                st.status[edge] = value
                st.open_edges -= 1
                u, v = self.ends[edge]
                if value == TREE:
                    ru, rv = st.find(u), st.find(v)
                    if ru == rv:
                        return False
                    st.parent[ru] = rv
                    st.n_tree += 1
                    if st.n_tree > self.target_tree:
                        return False
                    st.tree_deg[u] += 1
                    st.tree_deg[v] += 1
                else:
                    st.n_cycle += 1
                    if st.n_cycle > self.target_cycle:
                        return False
                    st.cycle_deg[u] += 1
                    st.cycle_deg[v] += 1
                if not (self._vertex_rules(st, u, pending) and self._vertex_rules(st, v, pending)):
                    return False
            if not self._global_rules(st, pending):
                return False
            if not pending:
                return True

    def _vertex_rules(self, st: _SearchState, v: int, pending: list[tuple[int, int]]) -> bool:
        c, t = st.cycle_deg[v], st.tree_deg[v]
        if c > 2 or (c == 1 and t == 2):
            return False
        if c == 2:
            forced = TREE
        elif c == 1 and t == 1:
            forced = CYCLE
        elif c == 0 and t == 2:
            forced = TREE
        else:
            return True
        for edge in self.incidence[v]:
            if st.status[edge] == UNDECIDED:
                pending.append((edge, forced))
        return True

    def _global_rules(self, st: _SearchState, pending: list[tuple[int, int]]) -> bool:
        need_cycle = self.target_cycle - st.n_cycle
        need_tree = self.target_tree - st.n_tree
        if need_cycle < 0 or need_tree < 0:
            return False
        if st.open_edges == 0:
            return True

        open_edges = [e for e, s in enumerate(st.status) if s == UNDECIDED]
        if need_cycle == 0 or need_tree == 0:
            forced = TREE if need_cycle == 0 else CYCLE
            pending.extend((e, forced) for e in open_edges)
            return True

        # TREE + undecided must still connect everything
        reach = [st.find(v) for v in range(self.n)]

        def top(x: int) -> int:
            while reach[x] != x:
                reach[x] = reach[reach[x]]
                x = reach[x]
            return x

        components = sum(1 for v in range(self.n) if reach[v] == v)
        for e in open_edges:
            u, v = self.ends[e]
            ru, rv = st.find(u), st.find(v)
            if ru == rv:
                pending.append((e, CYCLE))
                continue
            a, b = top(ru), top(rv)
            if a != b:
                reach[a] = b
                components -= 1
        return components == 1

    # branching

    def pick_edge(self, st: _SearchState) -> int:
        best_edge, best_score = -1, -1
        tree_deg, cycle_deg = st.tree_deg, st.cycle_deg
        for edge, status in enumerate(st.status):
            if status != UNDECIDED:
                continue
            u, v = self.ends[edge]
            score = max(tree_deg[u] + cycle_deg[u], tree_deg[v] + cycle_deg[v])
            if score > best_score:
                best_edge, best_score = edge, score
        return best_edge

    def children(self, st: _SearchState) -> list[_SearchState]:
        edge = self.pick_edge(st)
        out = []
        for value in (TREE, CYCLE):
            child = st.copy()
            if self.propagate(child, [(edge, value)]):
                out.append(child)
        return out

    def split(self, st: _SearchState, depth: int, max_depth: int, frontier: list[_SearchState]) -> None:
        if st.open_edges == 0 or depth >= max_depth:
            frontier.append(st)
            return
        self.nodes += 1
        for child in self.children(st):
            self.split(child, depth + 1, max_depth, frontier)

    def explore(self, st: _SearchState) -> bool:
        """Returns True when the search should stop."""
        if self.nodes >= self.limit:
            self.exhausted = True
            return True
        self.nodes += 1
        if st.open_edges == 0:
            self._record(st)
            return self.stop_at_first
        edge = self.pick_edge(st)
        for value in (TREE, CYCLE):
            child = st.copy()
            if self.propagate(child, [(edge, value)]) and self.explore(child):
                return True
        return False

    def _record(self, st: _SearchState) -> None:
        self.count += 1
        if self.track_halin and self._single_cycle(st):
            self.halin += 1
        if not (self.keep or self.keep_least):
            return
        bits = 0
        for edge, status in enumerate(st.status):
            if status == TREE:
                bits |= 1 << edge
        if self.keep:
            self.solutions.append(bits)
        elif not self.solutions or _index_key(bits) < _index_key(self.solutions[0]):
            self.solutions = [bits]

    def _single_cycle(self, st: _SearchState) -> bool:
        start = next(v for v in range(self.n) if st.cycle_deg[v] == 2)
        prev, cur, length = -1, start, 0
        while True:
            for edge in self.incidence[cur]:
                if st.status[edge] != CYCLE:
                    continue
                u, v = self.ends[edge]
                step = v if u == cur else u
                if step != prev:
                    break
            prev, cur = cur, step
            length += 1
            if cur == start:
                return length == self.target_cycle


def _explore_subtree(graph: Graph, state: _SearchState, mode: SolveMode, limit: int) -> _SubtreeResult:
    """One dispatcher job: exhaust (or cut off) the subtree below state."""
    search = _Search(graph, mode, limit)
    search.explore(state)
    return _SubtreeResult(search.nodes, search.exhausted, search.solutions, search.count, search.halin)


class _Cutoff:
    """Mirrors the merge's stopping rule so the inline path skips dead jobs."""

    def __init__(self, mode: SolveMode, budget: int, prefix: int) -> None:
        self.stop_at_first = mode in (SolveMode.DECIDE, SolveMode.FIRST)
        self.budget = budget
        self.total = prefix

    def __call__(self, result: _SubtreeResult) -> bool:
        self.total += result.nodes
        if result.exhausted or self.total > self.budget:
            return True
        return self.stop_at_first and bool(result.solutions)


def _merge(
    graph: Graph,
    mode: SolveMode,
    budget: int,
    prefix: int,
    outcomes: list[JobOutcome[_SubtreeResult]],
) -> SolveReport:
    counting = mode in (SolveMode.COUNT, SolveMode.ENUMERATE_ALL)
    total = prefix
    solutions: list[int] = []
    count = halin = 0
    for outcome in outcomes:
        if not outcome.ok:
            raise InternalError(f"subtree job {outcome.index} failed: {outcome.error}") from outcome.error
        result = outcome.result
        assert result is not None
        total += result.nodes
        if result.exhausted or total > budget:
            _log.info("budget %d exhausted at job %d of %d", budget, outcome.index, len(outcomes))
            return SolveReport(Verdict.BUDGET_EXCEEDED, nodes_explored=min(total, budget))
        solutions.extend(result.solutions)
        count += result.count
        halin += result.halin
        if not counting and result.solutions:
            break

    certificates = [
        verify_hist(graph, EdgeSet(graph.n, graph.m, bits)) for bits in solutions
    ]
    certificates.sort(key=lambda cert: cert.tree_edges.sort_key())
    if mode is SolveMode.COUNT:
        certificates = certificates[:1]
    return SolveReport(
        Verdict.HAS_HIST if count else Verdict.NO_HIST,
        certificates=certificates,
        count=count if counting else None,
        nodes_explored=total,
        halin_count=halin if counting else None,
    )


def solve(
    graph: Graph,
    mode: SolveMode = SolveMode.DECIDE,
    budget: Optional[int] = None,
    *,
    use_filters: bool = True,
    workers: Optional[int] = None,
    split_depth: Optional[int] = None,
) -> SolveReport:
    """Decide, count or enumerate the Hists of a connected cubic graph.

    budget bounds the number of search nodes; hitting it yields
    BudgetExceeded, never NoHist. use_filters=False skips mod4_filter.
    """
    require_cubic_connected(graph)
    budget = config.HISTLAB_BUDGET if budget is None else budget
    if budget < 1:
        raise InputError(f"budget must be positive, got {budget}", budget=budget)
    workers = config.HISTLAB_THREADS if workers is None else workers
    split_depth = config.HISTLAB_SPLIT_DEPTH if split_depth is None else split_depth
    counting = mode in (SolveMode.COUNT, SolveMode.ENUMERATE_ALL)

    if use_filters and mod4_filter(graph) is FilterVerdict.NO_HIST:
        _log.info("solve n=%d: bipartite with n = 0 mod 4, no search", graph.n)
        return SolveReport(
            Verdict.NO_HIST,
            count=0 if counting else None,
            filter_used=FilterUsed.MOD4,
            halin_count=0 if counting else None,
        )

    search = _Search(graph, mode, budget)
    root = search.root()
    if root is None:
        _log.info("solve n=%d: root propagation failed", graph.n)
        return SolveReport(Verdict.NO_HIST, count=0 if counting else None,
                           halin_count=0 if counting else None)

    frontier: list[_SearchState] = []
    search.split(root, 0, split_depth, frontier)
    prefix = search.nodes
    limit = max(budget - prefix, 0)
    _log.debug("solve n=%d mode=%s: %d subtree jobs after %d prefix nodes",
               graph.n, mode.value, len(frontier), prefix)

    jobs = [(graph, state, mode, limit) for state in frontier]
    outcomes = JobDispatcher(workers).run_sync(
        _explore_subtree, jobs, stop_when=_Cutoff(mode, budget, prefix)
    )
    report = _merge(graph, mode, budget, prefix, outcomes)
    _log.info("solve n=%d mode=%s verdict=%s nodes=%d count=%s",
              graph.n, mode.value, report.verdict.value, report.nodes_explored, report.count)
    return report


# --- oracle ---

def oracle_enumerate(graph: Graph, cap: Optional[int] = None) -> list[HistCertificate]:
    """All Hists via the complement characterization, independent of solve().

    Enumerates cycles of length at most n/2 + 1, combines vertex-disjoint
    ones into 2-regular subgraphs on exactly n/2 + 1 vertices, and keeps
    the non-separating ones.
    """
    require_cubic_connected(graph)
    cap = config.HISTLAB_ORACLE_CAP if cap is None else cap
    if graph.n > cap:
        raise InstanceTooLarge(f"oracle is capped at {cap} vertices, graph has {graph.n}", n=graph.n, cap=cap)

    target = graph.n // 2 + 1
    cycles: list[tuple[tuple[int, ...], frozenset[int], int]] = []
    for raw in nx.simple_cycles(graph.to_networkx(), length_bound=target):
        if len(raw) < 3:
            continue
        seq = canonical_cycle(raw)
        bits = 0
        for u, v in zip(seq, seq[1:] + seq[:1]):
            bits |= 1 << graph.edge_index(u, v)
        cycles.append((seq, frozenset(seq), bits))
    cycles.sort(key=lambda item: item[0])
    _log.debug("oracle n=%d: %d cycles of length <= %d", graph.n, len(cycles), target)

    found: list[HistCertificate] = []

    def extend(start: int, used: frozenset[int], bits: int) -> None:
        if len(used) == target:
            subgraph = two_regular_from_edges(graph, EdgeSet(graph.n, graph.m, bits))
            try:
                found.append(hist_from_two_regular(graph, subgraph))
            except NotNonSeparating:
                pass
            return
        for i in range(start, len(cycles)):
            seq, verts, cbits = cycles[i]
            if len(used) + len(seq) > target or used & verts:
                continue
            extend(i + 1, used | verts, bits | cbits)

    extend(0, frozenset(), 0)
    found.sort(key=lambda cert: cert.tree_edges.sort_key())
    return found
