"""Tests for core/construct.py."""

import sys
from pathlib import Path

import networkx as nx
import pytest

PROJECT_ROOT: Path = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from core.catalog import catalog_graph
from core.construct import (
    bipartite_inflate,
    contract_factor,
    cyclic_bipartite_witness,
    eulerian_orientation,
    fullerene_family_vertex_count,
    hexangulation_family_vertex_count,
    honeycomb_row_cycle,
    honeycomb_torus,
    inflate,
    insert_ring,
    random_regular,
)
from core.errors import (
    CutNotWellDefined,
    Disconnected,
    InputError,
    KTooSmall,
    MinDegreeTooLow,
    NotChordlessSixCycle,
    NotRegularEven,
    OddDegreeVertex,
    ParameterTooSmall,
    ParityViolation,
    RejectionLimitExceeded,
)
from core.graph import Graph, classify
from core.topology import euler_genus, is_hexangulation, trace_faces
from core.types import FilterVerdict


class TestInflate:
    """Tests for inflate and contract_factor."""

    def test_k4_becomes_truncated_tetrahedron(self, k4):
        """Each K4 vertex becomes a triangle: 12 vertices, cubic."""
        result = inflate(k4)
        graph = result.inflated
        assert graph.n == 12 and graph.is_cubic()
        assert len(result.factor.cycles) == 4
        assert all(len(cycle) == 3 for cycle in result.factor.cycles)
        assert nx.is_isomorphic(graph.to_networkx(), nx.truncated_tetrahedron_graph())

    def test_contraction_reproduces_base(self, k4, petersen):
        """Contracting the factor gives the base graph back."""
        for base in (k4, petersen, catalog_graph("k5")):
            assert contract_factor(inflate(base)) == base

    def test_seeded_inflation_is_deterministic(self):
        """The same seed gives the same graph; the base survives any seed."""
        base = catalog_graph("k5")
        assert inflate(base, seed=7) == inflate(base, seed=7)
        assert contract_factor(inflate(base, seed=7)) == base

    def test_vertex_map(self, k4):
        """vertex_map records base vertex and cycle position."""
        result = inflate(k4)
        assert result.vertex_map[:3] == ((0, 0), (0, 1), (0, 2))
        assert len(result.vertex_map) == 12

    def test_min_degree(self):
        """A base vertex of degree 2 is refused."""
        with pytest.raises(MinDegreeTooLow):
            inflate(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))

    def test_disconnected_base(self, k4):
        """Two disjoint K4s cannot be inflated."""
        edges = list(k4.edges) + [(u + 4, v + 4) for u, v in k4.edges]
        with pytest.raises(Disconnected):
            inflate(Graph.from_edges(8, edges))


class TestEulerianOrientation:
    """Tests for eulerian_orientation."""

    def test_balanced(self):
        """In K5 every vertex ends with indegree 2 and outdegree 2."""
        orientation = eulerian_orientation(catalog_graph("k5"))
        assert orientation.indegree == (2,) * 5
        assert orientation.outdegree == (2,) * 5

    def test_odd_degree(self, k4):
        """Odd degrees have no Eulerian orientation."""
        with pytest.raises(OddDegreeVertex):
            eulerian_orientation(k4)

    def test_disconnected_components_each_balanced(self):
        """Two disjoint triangles are oriented one circuit each."""
        graph = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        orientation = eulerian_orientation(graph)
        assert orientation.indegree == orientation.outdegree == (1,) * 6


class TestBipartiteInflate:
    """Tests for bipartite_inflate."""

    @pytest.mark.parametrize("name,k", [("k5", 2), ("k7", 3), ("octahedron", 2)])
    def test_catalog_bases(self, name, k):
        """Cubic, bipartite, connected, 2k|V(H)| vertices; contraction gives H back."""
        base = catalog_graph(name)
        result = bipartite_inflate(base, k)
        graph = result.inflated
        profile = classify(graph)
        assert graph.n == 2 * k * base.n
        assert profile.is_cubic and profile.is_connected and profile.is_bipartite
        assert contract_factor(result) == base

    def test_coloring_and_orientation(self):
        """Colour 0 vertices are all tails, colour 1 vertices all heads."""
        result = bipartite_inflate(catalog_graph("k5"), 2)
        graph = result.inflated
        assert result.coloring is not None and result.orientation is not None
        for v in range(graph.n):
            if result.coloring[v] == 0:
                assert result.orientation.outdegree[v] == 3
            else:
                assert result.orientation.indegree[v] == 3
        for u, v in graph.edges:
            assert result.coloring[u] != result.coloring[v]

    @pytest.mark.parametrize("k", [2, 3])
    @pytest.mark.parametrize("seed", range(10))
    def test_random_bases(self, k, seed):
        """Seeded random connected 2k-regular bases on at most 10 vertices."""
        n = 2 * k + 1 + seed % (10 - 2 * k)
        base = None
        for offset in range(50):
            candidate = random_regular(n, 2 * k, seed * 100 + offset)
            if candidate.is_connected():
                base = candidate
                break
        assert base is not None
        result = bipartite_inflate(base, k)
        profile = classify(result.inflated)
        assert result.inflated.n == 2 * k * n
        assert profile.is_cubic and profile.is_bipartite and profile.is_connected
        assert contract_factor(result) == base

    def test_k_too_small(self):
        """k = 1 would give degree-2 bases."""
        with pytest.raises(KTooSmall):
            bipartite_inflate(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), 1)

    def test_wrong_degree(self):
        """K5 is 4-regular, so k = 3 does not fit."""
        with pytest.raises(NotRegularEven):
            bipartite_inflate(catalog_graph("k5"), 3)


class TestRandomRegular:
    """Tests for random_regular."""

    def test_regular_and_simple(self):
        """Every vertex has degree d."""
        graph = random_regular(12, 3, seed=1)
        assert graph.n == 12
        assert graph.degrees() == [3] * 12

    def test_dense_case_uses_complement(self):
        """High degrees come out regular too."""
        graph = random_regular(10, 7, seed=3)
        assert graph.degrees() == [7] * 10

    def test_deterministic(self):
        """Same seed, same graph."""
        assert random_regular(16, 4, seed=5) == random_regular(16, 4, seed=5)

    def test_parity(self):
        """n * d must be even."""
        with pytest.raises(ParityViolation):
            random_regular(5, 3, seed=0)

    def test_degree_range(self):
        """d must be below n."""
        with pytest.raises(InputError):
            random_regular(4, 4, seed=0)

    def test_rejection_limit(self):
        """A zero retry budget gives up."""
        with pytest.raises(RejectionLimitExceeded):
            random_regular(20, 3, seed=0, limit=0)


class TestHoneycomb:
    """Tests for honeycomb_torus and honeycomb_row_cycle."""

    def test_three_by_three(self):
        """18 vertices, 9 hexagonal faces, genus 1."""
        torus = honeycomb_torus(3, 3)
        graph = torus.graph
        assert graph.n == 18 and graph.is_cubic()
        faces = trace_faces(graph, torus.rotation)
        assert faces.lengths == [6] * 9
        assert euler_genus(graph, torus.rotation) == 1
        assert is_hexangulation(graph, torus.rotation) == (True, 1)

    @pytest.mark.parametrize("m,n", [(2, 3), (3, 2), (4, 4), (5, 3)])
    def test_sizes(self, m, n):
        """Every size is a genus-1 hexangulation with 2mn vertices."""
        torus = honeycomb_torus(m, n)
        assert torus.graph.n == 2 * m * n
        assert is_hexangulation(torus.graph, torus.rotation) == (True, 1)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_two_rows_stay_simple(self, n):
        """With two rows both wraps join rows 0 and 1 yet no edge repeats."""
        torus = honeycomb_torus(2, n)
        graph = torus.graph
        assert graph.is_cubic()
        assert len(set(graph.edges)) == graph.m == 6 * n
        assert is_hexangulation(graph, torus.rotation) == (True, 1)

    def test_too_small(self):
        """One row is refused."""
        with pytest.raises(ParameterTooSmall):
            honeycomb_torus(1, 3)

    def test_provenance(self):
        """The generator and its parameters are recorded."""
        assert honeycomb_torus(3, 3).provenance == {"generator": "honeycomb_torus", "params": {"m": 3, "n": 3}}

    def test_row_cycle(self):
        """Row 1 of the 3x3 torus is vertices 6..11 in order."""
        assert honeycomb_row_cycle(3, 3, 1) == [6, 7, 8, 9, 10, 11]
        with pytest.raises(InputError):
            honeycomb_row_cycle(3, 3, 3)


class TestInsertRing:
    """Tests for insert_ring."""

    def test_two_insertions(self):
        """18 -> 30 -> 42 vertices, each a genus-1 hexangulation."""
        torus = honeycomb_torus(3, 3)
        row = honeycomb_row_cycle(3, 3, 0)
        once = insert_ring(torus, row)
        twice = insert_ring(once, row)
        assert (once.graph.n, twice.graph.n) == (30, 42)
        for embedded in (once, twice):
            assert embedded.graph.is_cubic()
            assert is_hexangulation(embedded.graph, embedded.rotation) == (True, 1)
        assert twice.provenance["parent"]["generator"] == "insert_ring"

    def test_not_a_cycle(self):
        """Six vertices that do not form a cycle are refused."""
        torus = honeycomb_torus(3, 3)
        with pytest.raises(NotChordlessSixCycle):
            insert_ring(torus, [0, 1, 2, 3, 4, 6])

    def test_sides_must_alternate(self):
        """A 6-cycle whose third edges do not alternate cannot be cut."""
        torus = honeycomb_torus(3, 3)
        graph = torus.graph
        # a facial hexagon: its third edges all point away from the face
        face = trace_faces(graph, torus.rotation).vertex_cycles()[0]
        with pytest.raises((CutNotWellDefined, NotChordlessSixCycle)):
            insert_ring(torus, list(face))

    def test_family_arithmetic(self):
        """Documented family orders."""
        assert [hexangulation_family_vertex_count(k) for k in range(3)] == [10, 22, 34]
        assert fullerene_family_vertex_count(1) == 82
        with pytest.raises(ParameterTooSmall):
            fullerene_family_vertex_count(-1)


class TestWitness:
    """Tests for cyclic_bipartite_witness."""

    def test_k1(self):
        """k = 1: 4-regular base, bipartite inflation with n = 0 mod 4, mod4 NoHist."""
        result, report = cyclic_bipartite_witness(1, seed=0)
        assert report.n_mod_4 == 0
        assert report.mod4_verdict is FilterVerdict.NO_HIST
        assert report.cec_at_least_k
        assert report.inflated.is_bipartite and report.inflated.is_cubic
        assert result.inflated.n == 4 * report.base.n
        assert report.to_dict()["mod4_verdict"] == "NoHist"

    @pytest.mark.slow
    def test_k2(self):
        """k = 2: measured cec is at least 2."""
        _, report = cyclic_bipartite_witness(2, seed=0, max_len=6)
        assert report.cec_at_least_k
        assert report.n_mod_4 == 0

    def test_bad_k(self):
        """k must be positive."""
        with pytest.raises(ParameterTooSmall):
            cyclic_bipartite_witness(0, seed=0)
