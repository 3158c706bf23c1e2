"""Tests for core/hist.py."""

import sys
from pathlib import Path

import pytest

PROJECT_ROOT: Path = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from core.catalog import catalog_graph
from core.construct import honeycomb_torus
from core.errors import (
    ContainsCycle,
    DegreeTwoVertex,
    Disconnected,
    InputError,
    InstanceTooLarge,
    InvalidCertificate,
    NotCubic,
    NotNonSeparating,
    NotSpanning,
    NotTwoRegular,
    WrongVertexCount,
)
from core.graph import EdgeSet, Graph
from core.hist import (
    certificate_stats,
    complement_of_hist,
    hist_from_two_regular,
    is_halin_certificate,
    mod4_filter,
    oracle_enumerate,
    solve,
    two_regular_from_cycles,
    verify_hist,
)
from core.types import FilterUsed, FilterVerdict, HistCertificate, SolveMode, Verdict


def _star(k4: Graph) -> EdgeSet:
    return EdgeSet.from_pairs(k4, [(0, 1), (0, 2), (0, 3)])


def _tree_sets(certificates: list[HistCertificate]) -> list[int]:
    return [cert.tree_edges.bits for cert in certificates]


def _assert_agrees(graph: Graph) -> None:
    report = solve(graph, SolveMode.ENUMERATE_ALL)
    oracle = oracle_enumerate(graph)
    assert _tree_sets(report.certificates) == _tree_sets(oracle)
    assert report.count == len(oracle)
    for cert in report.certificates:
        assert hist_from_two_regular(graph, complement_of_hist(graph, cert)) == cert


class TestVerifyHist:
    """Tests for verify_hist."""

    def test_star_in_k4(self, k4):
        """The star at 0 is a Hist with three leaves and one branch vertex."""
        cert = verify_hist(k4, _star(k4))
        assert (cert.t1, cert.t3) == (3, 1)
        assert cert.leaves(k4) == (1, 2, 3)

    def test_path_has_degree_two_vertex(self, k4):
        """A Hamiltonian path is a spanning tree but not a Hist."""
        path = EdgeSet.from_pairs(k4, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(DegreeTwoVertex) as excinfo:
            verify_hist(k4, path)
        assert excinfo.value.context["vertex"] == 1

    def test_not_spanning(self, k4):
        """An uncovered vertex is reported before anything else."""
        with pytest.raises(NotSpanning):
            verify_hist(k4, EdgeSet.from_pairs(k4, [(0, 1), (1, 2), (0, 2)]))

    def test_contains_cycle(self, k4):
        """A spanning edge set with a triangle is rejected."""
        with pytest.raises(ContainsCycle):
            verify_hist(k4, EdgeSet.from_pairs(k4, [(0, 1), (1, 2), (0, 2), (2, 3)]))

    def test_forest_is_disconnected(self, k33):
        """A spanning perfect matching is acyclic but not connected."""
        with pytest.raises(Disconnected):
            verify_hist(k33, EdgeSet.from_pairs(k33, [(0, 3), (1, 4), (2, 5)]))

    def test_requires_cubic(self):
        """Non-cubic hosts are rejected."""
        path = Graph.from_edges(3, [(0, 1), (1, 2)])
        with pytest.raises(NotCubic):
            verify_hist(path, EdgeSet.full(path))

    def test_leaf_count_identity(self, petersen):
        """t1 = t3 + 2 and t1 + t3 = n for every certificate."""
        report = solve(petersen, SolveMode.ENUMERATE_ALL)
        for cert in report.certificates:
            assert cert.t1 == cert.t3 + 2
            assert cert.t1 + cert.t3 == petersen.n
            assert len(cert.tree_edges) == petersen.n - 1


class TestComplement:
    """Tests for complement_of_hist and hist_from_two_regular."""

    def test_k4_star_complement_is_triangle(self, k4):
        """Deleting the star leaves the triangle on its leaves."""
        complement = complement_of_hist(k4, verify_hist(k4, _star(k4)))
        assert complement.cycles == ((1, 2, 3),)
        assert complement.vertex_count == 3

    def test_k33_double_star(self, k33):
        """The double star centred at 2 and 5 leaves a 4-cycle on the other vertices."""
        tree = EdgeSet.from_pairs(k33, [(2, 5), (2, 3), (2, 4), (5, 0), (5, 1)])
        complement = complement_of_hist(k33, verify_hist(k33, tree))
        assert complement.cycles == ((0, 3, 1, 4),)
        assert complement.vertex_count == 4

    def test_invalid_certificate(self, k4):
        """A path dressed up as a certificate is refused."""
        path = EdgeSet.from_pairs(k4, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(InvalidCertificate):
            complement_of_hist(k4, HistCertificate(path, 2, 2))

    def test_wrong_counts_in_certificate(self, k4):
        """Claimed t1/t3 must match the tree."""
        with pytest.raises(InvalidCertificate):
            complement_of_hist(k4, HistCertificate(_star(k4), 2, 2))

    def test_triangle_gives_star(self, k4):
        """The converse on K4: triangle {1,2,3} yields the star at 0."""
        cert = hist_from_two_regular(k4, two_regular_from_cycles(k4, [[1, 2, 3]]))
        assert cert.tree_edges.pairs(k4) == [(0, 1), (0, 2), (0, 3)]

    def test_k33_four_cycle_gives_double_star(self, k33):
        """A 4-cycle missing 2 and 5 yields the double star at 2 and 5."""
        cert = hist_from_two_regular(k33, two_regular_from_cycles(k33, [[0, 3, 1, 4]]))
        assert sorted(cert.tree_edges.pairs(k33)) == [(0, 5), (1, 5), (2, 3), (2, 4), (2, 5)]
        assert (cert.t1, cert.t3) == (4, 2)

    def test_wrong_vertex_count(self, petersen):
        """A 5-cycle of Petersen covers 5 vertices, not 6."""
        with pytest.raises(WrongVertexCount):
            hist_from_two_regular(petersen, two_regular_from_cycles(petersen, [[0, 1, 2, 3, 4]]))

    def test_separating_subgraph(self):
        """A 6-cycle of the pentagonal prism that isolates a rung."""
        prism = catalog_graph("prism:5")
        subgraph = two_regular_from_cycles(prism, [[0, 1, 2, 7, 6, 5]])
        with pytest.raises(NotNonSeparating):
            hist_from_two_regular(prism, subgraph)

    def test_overlapping_cycles(self, k4):
        """Cycles sharing a vertex are not a 2-regular subgraph."""
        with pytest.raises(NotTwoRegular):
            two_regular_from_cycles(k4, [[0, 1, 2], [0, 1, 3]])

    def test_short_cycle(self, k4):
        """A 'cycle' of two vertices is refused."""
        with pytest.raises(NotTwoRegular):
            two_regular_from_cycles(k4, [[0, 1]])

    def test_roundtrip_on_all_certificates(self, petersen, bridged_cubic):
        """hist_from_two_regular undoes complement_of_hist."""
        for graph in (petersen, bridged_cubic):
            for cert in oracle_enumerate(graph):
                assert hist_from_two_regular(graph, complement_of_hist(graph, cert)) == cert


class TestStats:
    """Tests for is_halin_certificate and certificate_stats."""

    def test_k4_star_is_halin(self, k4):
        """One complement cycle."""
        assert is_halin_certificate(k4, verify_hist(k4, _star(k4)))

    def test_two_triangles_not_halin(self, bridged_cubic):
        """Removing one triangle per side leaves a Hist with two complement cycles."""
        triangles = two_regular_from_cycles(bridged_cubic, [[0, 2, 3], [5, 7, 8]])
        cert = hist_from_two_regular(bridged_cubic, triangles)
        stats = certificate_stats(bridged_cubic, cert)
        assert stats == {"t1": 6, "t3": 4, "cycles": 2, "cycle_lengths": [3, 3], "halin": False}
        assert not is_halin_certificate(bridged_cubic, cert)

    def test_k33_stats(self, k33):
        """The double star has one 4-cycle complement."""
        cert = hist_from_two_regular(k33, two_regular_from_cycles(k33, [[0, 3, 1, 4]]))
        assert certificate_stats(k33, cert) == {
            "t1": 4, "t3": 2, "cycles": 1, "cycle_lengths": [4], "halin": True,
        }


class TestMod4Filter:
    """Tests for mod4_filter."""

    @pytest.mark.parametrize("name", ["cube", "moebius_kantor", "desargues"])
    def test_bipartite_zero_mod_four(self, name):
        """Bipartite cubic graphs with n = 0 mod 4 have no Hist."""
        assert mod4_filter(catalog_graph(name)) is FilterVerdict.NO_HIST

    def test_honeycomb_torus(self):
        """The 12-vertex honeycomb torus is bipartite with n = 0 mod 4."""
        assert mod4_filter(honeycomb_torus(3, 2).graph) is FilterVerdict.NO_HIST

    @pytest.mark.parametrize("name", ["k33", "petersen", "k4", "heawood"])
    def test_inconclusive(self, name):
        """Non-bipartite graphs, or n = 2 mod 4, are inconclusive."""
        assert mod4_filter(catalog_graph(name)) is FilterVerdict.INCONCLUSIVE

    def test_requires_cubic(self):
        """K5 is not cubic."""
        with pytest.raises(NotCubic):
            mod4_filter(catalog_graph("k5"))


class TestSolve:
    """Tests for solve."""

    def test_k4_count(self, k4):
        """K4 has exactly four Hists, all Halin."""
        report = solve(k4, SolveMode.COUNT)
        assert report.verdict is Verdict.HAS_HIST
        assert report.count == 4
        assert report.halin_count == 4
        assert len(report.certificates) == 1
        least = solve(k4, SolveMode.ENUMERATE_ALL).certificates[0]
        assert report.certificates[0] == least
        verify_hist(k4, report.certificates[0].tree_edges)

    def test_k33_count(self, k33):
        """K3,3 has exactly nine Hists."""
        report = solve(k33, SolveMode.ENUMERATE_ALL)
        assert report.count == 9
        assert len(report.certificates) == 9
        assert report.halin_count == 9

    def test_petersen_count(self, petersen):
        """Petersen has ten Hists, one per vertex neighbourhood."""
        report = solve(petersen, SolveMode.COUNT)
        assert report.count == 10
        assert report.halin_count == 10

    def test_decide_returns_verified_certificate(self, petersen):
        """HasHist always comes with a certificate that verifies."""
        report = solve(petersen)
        assert report.verdict is Verdict.HAS_HIST
        assert len(report.certificates) == 1
        verify_hist(petersen, report.certificates[0].tree_edges)
        assert report.count is None

    def test_first_mode(self, k33):
        """first returns the smallest certificate of the enumeration."""
        first = solve(k33, SolveMode.FIRST)
        everything = solve(k33, SolveMode.ENUMERATE_ALL)
        assert len(first.certificates) == 1
        assert first.certificates[0] in everything.certificates

    def test_mod4_short_circuit(self, cube):
        """Bipartite n = 0 mod 4 graphs are decided without search."""
        report = solve(cube)
        assert report.verdict is Verdict.NO_HIST
        assert report.filter_used is FilterUsed.MOD4
        assert report.nodes_explored == 0

    def test_filterless_search_agrees_with_filter(self, cube):
        """The plain search also finds no Hist on the cube or the 12-vertex torus."""
        assert solve(cube, use_filters=False).verdict is Verdict.NO_HIST
        torus = honeycomb_torus(3, 2).graph
        report = solve(torus, SolveMode.COUNT, use_filters=False)
        assert report.verdict is Verdict.NO_HIST
        assert report.count == 0
        assert report.filter_used is FilterUsed.NONE

    def test_dodecahedron(self, dodecahedron):
        """The dodecahedron has no Hist and the search finishes."""
        report = solve(dodecahedron.graph)
        assert report.verdict is Verdict.NO_HIST

    def test_budget_exceeded_is_not_no_hist(self, petersen):
        """A tiny budget reports BudgetExceeded, never NoHist."""
        report = solve(petersen, SolveMode.COUNT, budget=1)
        assert report.verdict is Verdict.BUDGET_EXCEEDED
        assert report.nodes_explored <= 1
        assert report.certificates == []

    def test_budget_must_be_positive(self, k4):
        """Zero budget is an input error."""
        with pytest.raises(InputError):
            solve(k4, budget=0)

    def test_rejects_disconnected(self):
        """Two disjoint K4s are cubic but not connected."""
        edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
        edges += [(a + 4, b + 4) for a, b in edges]
        with pytest.raises(Disconnected):
            solve(Graph.from_edges(8, edges))

    def test_split_depth_does_not_change_report(self, petersen):
        """Certificates and counts are identical for any split depth."""
        reference = solve(petersen, SolveMode.ENUMERATE_ALL, split_depth=0)
        for depth in (1, 3, 6):
            report = solve(petersen, SolveMode.ENUMERATE_ALL, split_depth=depth)
            assert _tree_sets(report.certificates) == _tree_sets(reference.certificates)
            assert report.count == reference.count

    def test_worker_count_does_not_change_report(self, k33):
        """A process pool gives the same enumeration as inline runs."""
        inline = solve(k33, SolveMode.ENUMERATE_ALL, workers=1)
        pooled = solve(k33, SolveMode.ENUMERATE_ALL, workers=2)
        assert _tree_sets(pooled.certificates) == _tree_sets(inline.certificates)
        assert pooled.count == inline.count


class TestOracle:
    """Tests for oracle_enumerate against solve."""

    @pytest.mark.parametrize(
        "name", ["k4", "k33", "petersen", "prism:5", "heawood", "pappus", "cube", "moebius_kantor"]
    )
    def test_catalog_agrees(self, name):
        """solve(all) and the oracle find the same certificates."""
        graph = catalog_graph(name)
        _assert_agrees(graph)

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["desargues", "dodecahedron"])
    def test_catalog_agrees_twenty_vertices(self, name):
        """Both 20-vertex catalog graphs have no Hist, by either method."""
        graph = catalog_graph(name)
        _assert_agrees(graph)
        assert oracle_enumerate(graph) == []

    @pytest.mark.parametrize("n", [8, 10, 12])
    @pytest.mark.parametrize("seed", range(40))
    def test_random_agrees(self, random_cubic, n, seed):
        """Same on seeded random connected cubic graphs."""
        _assert_agrees(random_cubic(n, seed))

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [14, 16])
    @pytest.mark.parametrize("seed", range(40))
    def test_random_agrees_larger(self, random_cubic, n, seed):
        """Larger random instances, with and without filters."""
        graph = random_cubic(n, seed)
        _assert_agrees(graph)
        unfiltered = solve(graph, SolveMode.ENUMERATE_ALL, use_filters=False)
        assert _tree_sets(unfiltered.certificates) == _tree_sets(oracle_enumerate(graph))

    @pytest.mark.slow
    def test_honeycomb_three_by_three(self):
        """The 18-vertex torus has 27 Hists by either method."""
        graph = honeycomb_torus(3, 3).graph
        assert solve(graph, SolveMode.COUNT).count == 27
        assert len(oracle_enumerate(graph)) == 27

    def test_instance_cap(self, dodecahedron):
        """Graphs above the cap are refused."""
        with pytest.raises(InstanceTooLarge):
            oracle_enumerate(dodecahedron.graph, cap=12)

    def test_oracle_certificates_verify(self, k33):
        """Every oracle certificate passes verify_hist."""
        for cert in oracle_enumerate(k33):
            assert verify_hist(k33, cert.tree_edges) == cert
