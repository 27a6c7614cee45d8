"""
Closed-form witness builders.

This module turns the constructive arguments for paths, cycles, tournaments
and the spider family into explicit vertex sets. Every builder verifies its
output with the definition-based verifiers before handing it out.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from src.core.exceptions import InvariantViolation, NotATournamentError, PreconditionError
from src.core.monitoring import LogLevel, log_event
from src.models.digraph import Digraph, ParamKind, VertexSet, iter_bits, mask_of, popcount
from src.services.generators import dicycle, dipath, spider, transitive_tournament
from src.services.solver import solve_min
from src.services.verifiers import is_set


class Family(Enum):
    PATH = "path"
    CYCLE = "cycle"
    TOURNAMENT = "tournament"
    SPIDER = "spider"


@dataclass(frozen=True)
class WitnessRecipe:
    kind: ParamKind
    family: Family
    n: int
    set: VertexSet
    claimed_size: int
    from_solver: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "family": self.family.value,
            "n": self.n,
            "witness": self.set.one_based(),
            "claimed_size": self.claimed_size,
            "from_solver": self.from_solver,
        }


PATTERN_KINDS = (
    ParamKind.GAMMA_PLUS,
    ParamKind.GAMMA_OS,
    ParamKind.GAMMA_SO,
    ParamKind.GAMMA_OSO,
    ParamKind.GAMMA_ISO,
)


def path_closed_form(kind: ParamKind, n: int) -> int:
    """Closed-form value on directed paths and cycles."""
    if kind in (ParamKind.GAMMA_PLUS, ParamKind.GAMMA_OS):
        return math.ceil(n / 2)
    if kind in (ParamKind.GAMMA_OSO, ParamKind.GAMMA_ISO):
        return math.ceil(2 * n / 3)
    if kind is ParamKind.GAMMA_SO:
        return math.ceil(3 * n / 5)
    raise PreconditionError(f"no path/cycle closed form for {kind.value}")


def path_pattern(kind: ParamKind, n: int) -> List[int]:
    """1-indexed positions of the pattern set along v1..vn."""
    positions = range(1, n + 1)
    if kind in (ParamKind.GAMMA_PLUS, ParamKind.GAMMA_OS):
        chosen = [i for i in positions if i % 2 == 1]
    elif kind is ParamKind.GAMMA_OSO:
        chosen = [i for i in positions if i % 3 in (1, 2)]
    elif kind is ParamKind.GAMMA_SO:
        chosen = [i for i in positions if i % 5 in (1, 3, 4)]
        if n % 5 == 2:
            chosen.append(n)
    elif kind is ParamKind.GAMMA_ISO:
        chosen = [i for i in positions if i % 3 in (0, 1)]
        if n % 3 == 2:
            chosen.append(n)
    else:
        raise PreconditionError(f"no path pattern for {kind.value}")
    return chosen


def path_witness(kind: ParamKind, n: int) -> WitnessRecipe:
    if n < 1:
        raise PreconditionError("path witness needs n >= 1")
    claimed = path_closed_form(kind, n)
    witness = VertexSet.from_indices(n, (i - 1 for i in path_pattern(kind, n)))
    if len(witness) != claimed or not is_set(dipath(n), witness, kind.set_kind):
        log_event("path_pattern_rejected", {"kind": kind.value, "n": n}, LogLevel.CRITICAL)
        raise InvariantViolation(f"path pattern for {kind.value} failed at n={n}")
    return WitnessRecipe(kind, Family.PATH, n, witness, claimed)


def cycle_witness(kind: ParamKind, n: int) -> WitnessRecipe:
    """Path pattern anchored at v1; the solver witness stands in if it ever fails."""
    if n < 3:
        raise PreconditionError("cycle witness needs n >= 3")
    claimed = path_closed_form(kind, n)
    cycle = dicycle(n)
    witness = VertexSet.from_indices(n, (i - 1 for i in path_pattern(kind, n)))
    if len(witness) == claimed and is_set(cycle, witness, kind.set_kind):
        return WitnessRecipe(kind, Family.CYCLE, n, witness, claimed)

    log_event("cycle_pattern_fallback", {"kind": kind.value, "n": n}, LogLevel.WARNING)
    result = solve_min(cycle, kind)
    return WitnessRecipe(kind, Family.CYCLE, n, result.witness, result.value, from_solver=True)


def _require_tournament(tournament: Digraph) -> None:
    if not tournament.is_tournament():
        raise NotATournamentError("input digraph is not a tournament")


def greedy_outdom_trace(tournament: Digraph, within: Optional[int] = None) -> Tuple[int, List[int]]:
    """Greedy out-dominating set of the subtournament on `within` and the
    remainder size after each selection."""
    remaining = tournament.full_mask if within is None else within
    chosen = 0
    trace = []
    while remaining:
        best = max(
            iter_bits(remaining),
            key=lambda u: (popcount(tournament.out_adj[u] & remaining), -u),
        )
        chosen |= 1 << best
        remaining &= ~tournament.closed_out(best)
        trace.append(popcount(remaining))
    return chosen, trace


def tournament_greedy_outdom(tournament: Digraph) -> VertexSet:
    _require_tournament(tournament)
    chosen, _ = greedy_outdom_trace(tournament)
    return VertexSet(chosen, tournament.n)


def tournament_sods(tournament: Digraph) -> VertexSet:
    """Greedy out-dominating set plus the smallest vertex outside it."""
    _require_tournament(tournament)
    if tournament.n < 2:
        raise PreconditionError("tournament SODS needs n >= 2")
    greedy = tournament_greedy_outdom(tournament)
    extra = next(iter_bits(tournament.full_mask & ~greedy.bits))
    return greedy.add(extra)


def tournament_osods_with_source(tournament: Digraph) -> VertexSet:
    """The source together with a greedy out-dominating set of T minus the source."""
    _require_tournament(tournament)
    if tournament.n < 3:
        raise PreconditionError("tournament OSODS construction needs n >= 3")
    sources = tournament.sources()
    if not len(sources):
        raise PreconditionError("tournament has no source vertex")
    source = next(iter(sources))
    rest, _ = greedy_outdom_trace(tournament, tournament.full_mask & ~(1 << source))
    return VertexSet(rest | 1 << source, tournament.n)


def tournament_hamiltonian_path(tournament: Digraph) -> List[int]:
    """Insertion construction scanning positions left to right."""
    _require_tournament(tournament)
    path = [0]
    for v in range(1, tournament.n):
        for p in range(len(path) + 1):
            enters = p == 0 or tournament.has_arc(path[p - 1], v)
            leaves = p == len(path) or tournament.has_arc(v, path[p])
            if enters and leaves:
                path.insert(p, v)
                break
        else:
            raise InvariantViolation(f"no insertion point for vertex {v}")
    return path


def tournament_osods_via_hampath(tournament: Digraph) -> VertexSet:
    """Positions congruent to 1 or 2 mod 3 along a hamiltonian path."""
    _require_tournament(tournament)
    if tournament.n < 2:
        raise PreconditionError("hamiltonian-path construction needs n >= 2")
    path = tournament_hamiltonian_path(tournament)
    return VertexSet(mask_of(v for i, v in enumerate(path, start=1) if i % 3 in (1, 2)), tournament.n)


def spider_isods_witness(k: int) -> VertexSet:
    """{w, u1..uk} on spider(k)."""
    if k < 1:
        raise PreconditionError("spider witness needs k >= 1")
    return VertexSet(mask_of(range(k + 1)), 2 * k + 1)


def universal_pair(digraph: Digraph) -> Optional[Tuple[int, int]]:
    """First (u, v) with N⁺(u)∖{v} = N⁻(v)∖{u} = V∖{u,v}."""
    if digraph.n < 2:
        raise PreconditionError("pair search needs n >= 2")
    for u in range(digraph.n):
        for v in range(digraph.n):
            if u == v:
                continue
            rest = digraph.full_mask & ~(1 << u | 1 << v)
            if digraph.out_adj[u] & ~(1 << v) == rest and digraph.in_adj[v] & ~(1 << u) == rest:
                return u, v
    return None


def family_digraph(family: str, n: int) -> Digraph:
    if family == "path":
        return dipath(n)
    if family == "cycle":
        return dicycle(n)
    if family == "spider":
        return spider(n)
    if family == "transtour":
        return transitive_tournament(n)
    raise PreconditionError(f"unknown family '{family}'")


def family_witness(family: str, kind: ParamKind, n: int) -> Tuple[WitnessRecipe, Optional[int]]:
    """Witness and closed-form value (None where only an upper bound is known)."""
    if family == "path":
        recipe = path_witness(kind, n)
        return recipe, recipe.claimed_size
    if family == "cycle":
        recipe = cycle_witness(kind, n)
        return recipe, path_closed_form(kind, n)
    if family == "spider":
        if kind is not ParamKind.GAMMA_ISO:
            raise PreconditionError("spider family only carries a γ_iso closed form")
        witness = spider_isods_witness(n)
        return WitnessRecipe(kind, Family.SPIDER, 2 * n + 1, witness, n + 1), n + 1
    if family == "transtour":
        return _transitive_witness(kind, n)
    raise PreconditionError(f"unknown family '{family}'")


def _transitive_witness(kind: ParamKind, n: int) -> Tuple[WitnessRecipe, Optional[int]]:
    tournament = transitive_tournament(n)
    closed_form: Optional[int]
    if n == 1 or kind in (ParamKind.GAMMA_PLUS, ParamKind.GAMMA_OS):
        witness = VertexSet.from_indices(n, [0])
        closed_form = 1
    elif kind is ParamKind.GAMMA_ISO:
        witness = VertexSet.from_indices(n, universal_pair(tournament))
        closed_form = 2
    elif kind is ParamKind.GAMMA_SO:
        witness = tournament_sods(tournament)
        closed_form = 2
    elif kind is ParamKind.GAMMA_OSO:
        witness = (
            tournament_osods_with_source(tournament) if n >= 3 else tournament_osods_via_hampath(tournament)
        )
        closed_form = None
    else:
        raise PreconditionError(f"no transitive-tournament construction for {kind.value}")

    if not is_set(tournament, witness, kind.set_kind):
        raise InvariantViolation(f"transitive tournament witness for {kind.value} failed at n={n}")
    return WitnessRecipe(kind, Family.TOURNAMENT, n, witness, len(witness)), closed_form
