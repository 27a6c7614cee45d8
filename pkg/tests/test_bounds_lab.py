"""Bound catalogue, longest path/cycle and conjecture hunt tests."""

import networkx as nx
import pytest
from hypothesis import given

from src.core.exceptions import BoundViolation, CapExceededError, PreconditionError
from src.models.digraph import Digraph, ParamKind
from src.services.bounds_lab import (
    CATALOGUE,
    EntryType,
    SearchMode,
    bound_report,
    conjecture_hunt,
    equals_n_characterization,
    longest_dicycle_length,
    longest_dipath_length,
    survey,
)
from src.services.generators import (
    dicycle,
    dipath,
    enumerate_digraphs,
    random_corpus,
    reference_fixture,
    spider,
    tournament_corpus,
    transitive_tournament,
    undirected_family,
)
from src.services.solver import SolveResult, solve_all
from tests.strategies import PROPERTY_SETTINGS, digraphs, tournaments

P = ParamKind


def _report(d: Digraph):
    return bound_report(d, solve_all(d))


class TestLongest:
    def test_path_and_cycle(self):
        assert longest_dipath_length(dipath(5)) == 4
        assert longest_dicycle_length(dipath(5)) == 0
        assert longest_dipath_length(dicycle(6)) == 5
        assert longest_dicycle_length(dicycle(6)) == 6

    def test_reference_fixture(self, fixture_digraph):
        assert longest_dicycle_length(fixture_digraph) == 4
        assert longest_dipath_length(fixture_digraph) == 4

    def test_digon_is_a_cycle(self):
        assert longest_dicycle_length(Digraph.from_arcs(3, [(0, 1), (1, 0)])) == 2

    def test_cap(self):
        with pytest.raises(CapExceededError):
            longest_dipath_length(dipath(8), cap=5)

    @PROPERTY_SETTINGS
    @given(digraphs(max_n=6))
    def test_against_networkx_simple_cycles(self, d):
        graph = d.to_networkx()
        cycles = [len(c) for c in nx.simple_cycles(graph)]
        assert longest_dicycle_length(d) == max(cycles, default=0)
        paths = [
            len(p) - 1
            for s in graph.nodes
            for t in graph.nodes
            if s != t
            for p in nx.all_simple_paths(graph, s, t)
        ]
        assert longest_dipath_length(d) == max(paths, default=0)


class TestCatalogue:
    def test_ids_are_unique(self):
        ids = [item.bound_id for item in CATALOGUE]
        assert len(ids) == len(set(ids))

    def test_cycle_lower_bound_is_tight(self):
        entry = _report(dicycle(6)).entry("oso.lower.two_outdegree")
        assert entry.applicable
        assert (entry.lhs, entry.rhs, entry.holds, entry.slack) == (4, 4, True, 0)

    def test_spider_lower_bound_is_tight(self):
        entry = _report(spider(2)).entry("iso.lower.outdegree")
        assert (entry.lhs, entry.rhs, entry.slack) == (3, 3, 0)

    def test_star_characterization(self):
        star = Digraph.from_arcs(4, [(0, 1), (2, 0), (0, 3)])
        report = _report(star)
        entry = report.entry("os.equals_n_minus_one")
        assert entry.applicable
        assert entry.entry_type is EntryType.CHARACTERIZATION
        assert entry.lhs == entry.rhs == 1

    def test_disconnected_input_marks_characterization_inapplicable(self):
        entry = _report(Digraph.from_arcs(4, [(0, 1)])).entry("os.equals_n_minus_one")
        assert not entry.applicable
        assert "weakly connected" in entry.reason

    def test_symmetric_guard(self):
        d = undirected_family("cycle", 4).to_digraph()
        assert not _report(d).entry("os.upper.out_plus_in").applicable

    def test_tournament_entries(self):
        report = _report(transitive_tournament(5))
        assert report.entry("tournament.os.equals_one").lhs == 1
        assert report.entry("tournament.oso.source_log").applicable
        assert report.entry("iso.upper.universal_pair").applicable

    def test_missing_parameters(self, fixture_digraph):
        with pytest.raises(PreconditionError):
            bound_report(fixture_digraph, {})

    def test_violation_raises_with_counterexample(self, c3):
        params = solve_all(c3)
        low = params[P.GAMMA_OS]
        params[P.GAMMA_OS] = SolveResult(P.GAMMA_OS, 3, low.witness, low.defense, 0, low.forced)
        with pytest.raises(BoundViolation) as exc:
            bound_report(c3, params)
        assert exc.value.counterexample.startswith("p digraph 3 3")
        report = bound_report(c3, params, raise_on_violation=False)
        assert report.violations()

    def test_survey(self, fixture_digraph):
        params, report = survey(fixture_digraph)
        assert params[P.GAMMA_OSO].value == 4
        assert report.longest_cycle == 4
        assert not report.violations()


class TestCatalogueHolds:
    @PROPERTY_SETTINGS
    @given(digraphs(max_n=6))
    def test_random_digraphs(self, d):
        assert not _report(d).violations()

    @PROPERTY_SETTINGS
    @given(tournaments(max_n=7))
    def test_random_tournaments(self, t):
        assert not _report(t).violations()

    def test_exhaustive_three_vertices(self):
        for d in enumerate_digraphs(3):
            _report(d)

    def test_seeded_samples(self):
        for n in (5, 6):
            for d in random_corpus(n, 15, seed=100 + n):
                _report(d)
        for n in (4, 6, 8):
            for t in tournament_corpus(n, 15, seed=n):
                _report(t)

    @pytest.mark.slow
    def test_exhaustive_four_vertices(self):
        for d in enumerate_digraphs(4):
            _report(d)
        for d in enumerate_digraphs(4, allow_symmetric=False):
            _report(d)

    @pytest.mark.slow
    def test_full_random_corpora(self):
        for n in (5, 6, 7, 8):
            for d in random_corpus(n, 1000, seed=n):
                _report(d)
        for n in range(4, 11):
            for t in tournament_corpus(n, 200, seed=n):
                _report(t)


class TestEqualsN:
    def test_examples(self, c3):
        assert equals_n_characterization(dipath(2))
        assert equals_n_characterization(Digraph.from_arcs(4, [(0, 1), (0, 2), (0, 3)]))
        assert not equals_n_characterization(c3)

    def test_matches_solver_exhaustively(self):
        for n in (1, 2, 3):
            for d in enumerate_digraphs(n):
                results = solve_all(d, kinds=(P.GAMMA_SO, P.GAMMA_OSO, P.GAMMA_ISO))
                predicted = equals_n_characterization(d)
                for kind, result in results.items():
                    assert (result.value == n) == predicted, (kind, d.arcs())


class TestHunt:
    def test_exhaustive_three(self):
        report = conjecture_hunt(P.GAMMA_OSO, SearchMode.EXHAUSTIVE, (3, 3))
        expected = sum(
            1 for d in enumerate_digraphs(3) if all(d.in_adj[u] and d.out_adj[u] for u in range(3))
        )
        assert report.digraphs_checked == expected
        assert report.attempts == 64
        assert report.counterexamples == []

    def test_exhaustive_cap(self):
        with pytest.raises(CapExceededError):
            conjecture_hunt(P.GAMMA_OSO, SearchMode.EXHAUSTIVE, (9, 9))

    def test_sampled_requires_seed(self):
        with pytest.raises(PreconditionError):
            conjecture_hunt(P.GAMMA_ISO, SearchMode.SAMPLED, (6, 6), samples=5)

    def test_sampled_is_deterministic(self):
        first = conjecture_hunt(P.GAMMA_ISO, SearchMode.SAMPLED, (6, 6), samples=10, seed=7)
        second = conjecture_hunt(P.GAMMA_ISO, SearchMode.SAMPLED, (6, 6), samples=10, seed=7)
        assert first.to_dict() == second.to_dict()
        assert first.digraphs_checked == 10

    def test_unsupported_kind(self):
        with pytest.raises(PreconditionError):
            conjecture_hunt(P.GAMMA_SO, SearchMode.EXHAUSTIVE, (3, 3))

    @pytest.mark.slow
    def test_exhaustive_four(self):
        report = conjecture_hunt(P.GAMMA_OSO, SearchMode.EXHAUSTIVE, (4, 4))
        expected = sum(
            1 for d in enumerate_digraphs(4) if all(d.in_adj[u] and d.out_adj[u] for u in range(4))
        )
        assert report.digraphs_checked == expected
