"""Orientation enumeration, spectrum and construction tests."""

import networkx as nx
import pytest

from src.core.exceptions import CapExceededError, NotBipartiteError, PreconditionError
from src.models.digraph import ParamKind, SetKind, UndirectedGraph, VertexSet
from src.services.generators import connected_graphs, undirected_family
from src.services.orientations import (
    bipartite_full_orientation,
    bipartition,
    enumerate_orientations,
    orientation_from_independent_set,
    orientation_from_sds,
    orientation_of,
    spectrum,
)
from src.services.solver import SolverConfig, solve_min
from src.services.verifiers import is_set

P = ParamKind


def _k23() -> UndirectedGraph:
    return UndirectedGraph.from_networkx(nx.complete_bipartite_graph(2, 3))


class TestEnumeration:
    def test_counts(self):
        assert len(list(enumerate_orientations(undirected_family("path", 2)))) == 2
        assert len(list(enumerate_orientations(undirected_family("star", 4)))) == 8

    def test_triangle_has_two_cyclic_orientations(self):
        orientations = list(enumerate_orientations(undirected_family("complete", 3)))
        assert len(orientations) == 8
        cyclic = [d for d in orientations if all(d.out_degree(u) == 1 for u in range(3))]
        assert len(cyclic) == 2

    def test_orientations_are_distinct_and_asymmetric(self):
        orientations = list(enumerate_orientations(undirected_family("cycle", 4)))
        assert len({tuple(d.arcs()) for d in orientations}) == 16
        assert not any(d.has_symmetric_arcs() for d in orientations)

    def test_mask_zero_orients_low_to_high(self):
        assert orientation_of(undirected_family("path", 3), 0).arcs() == [(0, 1), (1, 2)]

    def test_edge_cap(self):
        with pytest.raises(CapExceededError):
            list(enumerate_orientations(undirected_family("complete", 5), cap=5))


class TestSpectrum:
    def test_path_os(self):
        result = spectrum(undirected_family("path", 3), P.GAMMA_OS)
        assert (result.dom, result.DOM) == (2, 2)
        assert result.achieved == [2]
        assert result.is_interval
        assert result.orientations_evaluated == 4

    def test_even_cycle_reaches_n(self):
        assert spectrum(undirected_family("cycle", 4), P.GAMMA_OSO).DOM == 4

    def test_triangle_stays_below_n(self):
        assert spectrum(undirected_family("complete", 3), P.GAMMA_OSO).DOM < 3

    def test_extreme_orientations_are_reported(self):
        graph = undirected_family("cycle", 4)
        result = spectrum(graph, P.GAMMA_OSO)
        assert solve_min(orientation_of(graph, result.dom_orientation), P.GAMMA_OSO).value == result.dom
        assert solve_min(orientation_of(graph, result.DOM_orientation), P.GAMMA_OSO).value == result.DOM
        assert result.to_dict()["DOM_orientation_mask"] == result.DOM_orientation

    def test_thread_hint_does_not_change_spectrum(self):
        graph = undirected_family("cycle", 5)
        single = spectrum(graph, P.GAMMA_SO, SolverConfig(thread_hint=1))
        pooled = spectrum(graph, P.GAMMA_SO, SolverConfig(thread_hint=3))
        assert single.to_dict() == pooled.to_dict()

    def test_full_value_iff_bipartite(self):
        self._check_bipartite_characterization(4)

    @pytest.mark.slow
    def test_full_value_iff_bipartite_five_vertices(self):
        self._check_bipartite_characterization(5, max_edges=8)

    def test_min_os_equals_secure_domination(self):
        for graph in connected_graphs(4):
            if graph.n < 2:
                continue
            gamma_s = solve_min(graph.to_digraph(), P.GAMMA_S).value
            assert spectrum(graph, P.GAMMA_OS).dom == gamma_s

    @staticmethod
    def _check_bipartite_characterization(max_n, max_edges=None):
        for graph in connected_graphs(max_n, max_edges):
            bipartite = nx.is_bipartite(graph.to_networkx())
            for kind in (P.GAMMA_SO, P.GAMMA_OSO, P.GAMMA_ISO):
                assert (spectrum(graph, kind).DOM == graph.n) == bipartite, (graph.edges, kind)


class TestBipartite:
    def test_bipartition_anchors_smallest_vertex(self):
        x, y = bipartition(undirected_family("star", 4))
        assert x.one_based() == [1]
        assert y.one_based() == [2, 3, 4]

    def test_full_orientation_star(self):
        d = bipartite_full_orientation(undirected_family("star", 4))
        assert d.sinks().one_based() == [1]
        assert solve_min(d, P.GAMMA_SO).value == 4

    def test_full_orientation_cycles(self):
        assert solve_min(bipartite_full_orientation(undirected_family("cycle", 6)), P.GAMMA_ISO).value == 6
        assert solve_min(bipartite_full_orientation(undirected_family("cycle", 4)), P.GAMMA_OSO).value == 4

    def test_explicit_parts(self):
        graph = undirected_family("path", 3)
        x = VertexSet.from_indices(3, [1])
        d = bipartite_full_orientation(graph, (x, x.complement()))
        assert d.arcs() == [(0, 1), (2, 1)]

    def test_rejects_odd_cycle(self):
        with pytest.raises(NotBipartiteError):
            bipartite_full_orientation(undirected_family("complete", 3))

    def test_rejects_bad_parts(self):
        graph = undirected_family("path", 3)
        x = VertexSet.from_indices(3, [0, 1])
        with pytest.raises(NotBipartiteError):
            bipartite_full_orientation(graph, (x, x.complement()))


class TestSdsOrientation:
    @pytest.mark.parametrize("kind, n", [("path", 4), ("complete", 4), ("path", 2), ("cycle", 5)])
    def test_os_matches_secure_domination(self, kind, n):
        graph = undirected_family(kind, n)
        d, sds = orientation_from_sds(graph)
        assert is_set(d, sds, SetKind.OSDS)
        assert solve_min(d, P.GAMMA_OS).value == len(sds) == solve_min(graph.to_digraph(), P.GAMMA_S).value

    def test_connected_graphs(self):
        for graph in connected_graphs(5, max_edges=6):
            d, sds = orientation_from_sds(graph)
            assert solve_min(d, P.GAMMA_OS).value == len(sds)


class TestIndependentSetOrientation:
    def test_cycle(self):
        graph = undirected_family("cycle", 4)
        d = orientation_from_independent_set(graph, VertexSet.from_indices(4, [0, 2]))
        assert d.sinks().one_based() == [1, 3]
        assert is_set(d, VertexSet.from_indices(4, [1, 3]), SetKind.OSDS)

    def test_complete_bipartite(self):
        graph = _k23()
        independent = VertexSet.from_indices(5, [2, 3, 4])
        d = orientation_from_independent_set(graph, independent)
        assert is_set(d, independent.complement(), SetKind.OSDS)
        assert solve_min(d, P.GAMMA_OS).value <= 2

    def test_path_middle_vertex(self):
        d = orientation_from_independent_set(undirected_family("path", 3), VertexSet.from_indices(3, [1]))
        assert d.arcs() == [(0, 1), (2, 1)]

    def test_rejects_dependent_set(self):
        with pytest.raises(PreconditionError):
            orientation_from_independent_set(undirected_family("cycle", 4), VertexSet.from_indices(4, [0, 1]))

    def test_rejects_low_degree_member(self):
        with pytest.raises(PreconditionError):
            orientation_from_independent_set(undirected_family("path", 3), VertexSet.from_indices(3, [0]))


def test_secure_values_never_drop_below_secure_domination():
    for graph in connected_graphs(4):
        gamma_s = solve_min(graph.to_digraph(), P.GAMMA_S).value
        for d in enumerate_orientations(graph):
            for kind in (P.GAMMA_OS, P.GAMMA_SO, P.GAMMA_OSO, P.GAMMA_ISO):
                assert solve_min(d, kind).value >= gamma_s
