"""Closed-form construction tests."""

import math

import pytest
from hypothesis import given

from src.core.exceptions import NotATournamentError, PreconditionError
from src.models.digraph import Digraph, ParamKind, SetKind
from src.services.constructions import (
    PATTERN_KINDS,
    cycle_witness,
    family_witness,
    greedy_outdom_trace,
    path_closed_form,
    path_witness,
    spider_isods_witness,
    tournament_greedy_outdom,
    tournament_hamiltonian_path,
    tournament_osods_via_hampath,
    tournament_osods_with_source,
    tournament_sods,
    universal_pair,
)
from src.services.generators import (
    dicycle,
    dipath,
    make_rng,
    random_tournament_from,
    spider,
    tournament_corpus,
    transitive_tournament,
)
from src.services.solver import brute_oracle, solve_min
from src.services.verifiers import is_set
from tests.strategies import PROPERTY_SETTINGS, tournaments

P = ParamKind


def _with_universal_source(tournament: Digraph) -> Digraph:
    """Prepend a vertex beating every vertex of the tournament."""
    arcs = [(u + 1, v + 1) for u, v in tournament.arcs()] + [(0, v) for v in range(1, tournament.n + 1)]
    return Digraph.from_arcs(tournament.n + 1, arcs)


class TestPaths:
    def test_published_patterns(self):
        assert path_witness(P.GAMMA_OSO, 7).set.one_based() == [1, 2, 4, 5, 7]
        assert path_witness(P.GAMMA_SO, 7).set.one_based() == [1, 3, 4, 6, 7]
        assert path_witness(P.GAMMA_ISO, 4).set.one_based() == [1, 3, 4]

    @pytest.mark.parametrize("kind", PATTERN_KINDS)
    def test_patterns_verify_and_match_solver(self, kind):
        for n in range(1, 13):
            recipe = path_witness(kind, n)
            assert is_set(dipath(n), recipe.set, kind.set_kind)
            assert solve_min(dipath(n), kind).value == path_closed_form(kind, n) == recipe.claimed_size

    def test_closed_form_rejects_other_kinds(self):
        with pytest.raises(PreconditionError):
            path_closed_form(P.GAMMA_TWIN, 4)


class TestCycles:
    def test_published_sizes(self):
        assert len(cycle_witness(P.GAMMA_SO, 5).set) == 3
        assert len(cycle_witness(P.GAMMA_ISO, 6).set) == 4
        assert len(cycle_witness(P.GAMMA_PLUS, 4).set) == 2

    @pytest.mark.parametrize("kind", PATTERN_KINDS)
    def test_cycles_match_solver(self, kind):
        for n in range(3, 13):
            recipe = cycle_witness(kind, n)
            assert is_set(dicycle(n), recipe.set, kind.set_kind)
            assert len(recipe.set) == solve_min(dicycle(n), kind).value == path_closed_form(kind, n)

    def test_short_cycle_rejected(self):
        with pytest.raises(PreconditionError):
            cycle_witness(P.GAMMA_SO, 2)


class TestTournaments:
    def test_greedy_on_transitive(self):
        for n in (1, 4, 9):
            assert tournament_greedy_outdom(transitive_tournament(n)).one_based() == [1]

    def test_greedy_on_triangle(self, c3):
        assert len(tournament_greedy_outdom(c3)) <= 2

    def test_greedy_remainder_halves(self):
        t = random_tournament_from(make_rng(5), 40)
        _, trace = greedy_outdom_trace(t)
        sizes = [40] + trace
        for before, after in zip(sizes, sizes[1:]):
            assert after <= (before - 1) // 2

    def test_rejects_non_tournament(self, p4):
        with pytest.raises(NotATournamentError):
            tournament_greedy_outdom(p4)

    def test_sods_examples(self, c3):
        assert len(tournament_sods(transitive_tournament(5))) == 2
        s = tournament_sods(c3)
        assert len(s) == 2
        assert is_set(c3, s, SetKind.SODS)

    def test_osods_with_source(self):
        for n, bound in ((5, 3), (3, 2)):
            t = transitive_tournament(n)
            s = tournament_osods_with_source(t)
            assert len(s) <= bound
            assert is_set(t, s, SetKind.OSODS)

    def test_osods_with_prepended_source(self):
        t = _with_universal_source(random_tournament_from(make_rng(9), 8))
        s = tournament_osods_with_source(t)
        assert len(s) <= 4
        assert is_set(t, s, SetKind.OSODS)

    def test_osods_with_source_needs_a_source(self, c3):
        with pytest.raises(PreconditionError):
            tournament_osods_with_source(c3)

    def test_hamiltonian_path(self, c3):
        assert tournament_hamiltonian_path(transitive_tournament(5)) == [0, 1, 2, 3, 4]
        path = tournament_hamiltonian_path(c3)
        assert sorted(path) == [0, 1, 2]
        t = random_tournament_from(make_rng(50), 50)
        path = tournament_hamiltonian_path(t)
        assert sorted(path) == list(range(50))
        assert all(t.has_arc(a, b) for a, b in zip(path, path[1:]))

    def test_hampath_osods(self, c3):
        assert len(tournament_osods_via_hampath(c3)) == 2
        assert len(tournament_osods_via_hampath(transitive_tournament(6))) <= 4
        t = random_tournament_from(make_rng(12), 12)
        s = tournament_osods_via_hampath(t)
        assert len(s) <= 8
        assert is_set(t, s, SetKind.OSODS)

    @PROPERTY_SETTINGS
    @given(tournaments(min_n=2, max_n=9))
    def test_tournament_constructions_verify(self, t):
        n = t.n
        greedy = tournament_greedy_outdom(t)
        assert is_set(t, greedy, SetKind.OUT_DOMINATING)
        assert len(greedy) <= math.ceil(math.log2(n))
        sods = tournament_sods(t)
        assert is_set(t, sods, SetKind.SODS)
        assert len(sods) <= math.ceil(math.log2(n)) + 1
        hampath = tournament_osods_via_hampath(t)
        assert is_set(t, hampath, SetKind.OSODS)
        assert len(hampath) <= math.ceil(2 * n / 3)

    def test_random_tournament_sizes(self):
        for n in (2, 4, 8, 16, 64):
            for t in tournament_corpus(n, 20, seed=n):
                assert len(tournament_greedy_outdom(t)) <= math.ceil(math.log2(n))
                assert len(tournament_sods(t)) <= math.ceil(math.log2(n)) + 1

    def test_hundred_vertex_greedy(self):
        t = random_tournament_from(make_rng(100), 100)
        assert len(tournament_greedy_outdom(t)) <= 7

    @pytest.mark.slow
    def test_random_tournament_sizes_full(self):
        n = 2
        while n <= 512:
            for t in tournament_corpus(n, 200, seed=n):
                assert len(tournament_greedy_outdom(t)) <= math.ceil(math.log2(n))
                assert len(tournament_sods(t)) <= math.ceil(math.log2(n)) + 1
            n *= 2


class TestSpiderAndPairs:
    def test_spider_witness(self):
        assert len(spider_isods_witness(1)) == 2
        witness = spider_isods_witness(3)
        assert len(witness) == 4
        assert (spider(3).degree_stats().max_out + 1) * 4 - 1 == 7
        for k in range(1, 6):
            assert is_set(spider(k), spider_isods_witness(k), SetKind.ISODS)

    def test_spider_oracle_value(self):
        assert brute_oracle(spider(5), P.GAMMA_ISO).value == 6

    def test_universal_pair(self):
        assert universal_pair(transitive_tournament(4)) == (0, 3)
        assert universal_pair(dicycle(4)) is None
        assert universal_pair(spider(2)) is None

    def test_universal_pair_gives_isods(self):
        t = transitive_tournament(6)
        u, v = universal_pair(t)
        assert solve_min(t, P.GAMMA_ISO).value == 2
        assert is_set(t, solve_min(t, P.GAMMA_ISO).witness, SetKind.ISODS)
        assert (u, v) == (0, 5)


class TestFamilyWitness:
    def test_path_so(self):
        recipe, closed = family_witness("path", P.GAMMA_SO, 10)
        assert closed == 6 == len(recipe.set)

    def test_cycle_iso(self):
        _, closed = family_witness("cycle", P.GAMMA_ISO, 9)
        assert closed == 6

    def test_transitive_os(self):
        recipe, closed = family_witness("transtour", P.GAMMA_OS, 8)
        assert closed == 1
        assert recipe.set.one_based() == [1]

    def test_transitive_kinds_match_solver(self):
        for n in range(2, 9):
            t = transitive_tournament(n)
            for kind in (P.GAMMA_PLUS, P.GAMMA_OS, P.GAMMA_SO, P.GAMMA_ISO):
                recipe, closed = family_witness("transtour", kind, n)
                assert closed == solve_min(t, kind).value
            recipe, closed = family_witness("transtour", P.GAMMA_OSO, n)
            assert closed is None
            assert len(recipe.set) >= solve_min(t, P.GAMMA_OSO).value

    def test_spider_only_iso(self):
        recipe, closed = family_witness("spider", P.GAMMA_ISO, 2)
        assert closed == 3
        assert recipe.n == 5
        with pytest.raises(PreconditionError):
            family_witness("spider", P.GAMMA_SO, 2)

    def test_unknown_family(self):
        with pytest.raises(PreconditionError):
            family_witness("wheel", P.GAMMA_SO, 5)
