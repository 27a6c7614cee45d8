"""
Exact minimum computation for the eight domination parameters.

This module provides the branch-and-bound solver used throughout the
laboratory and an independent brute-force oracle. The solver fixes the
forced vertices, starts at the best applicable lower bound, and enumerates
supersets of the forced set cardinality by cardinality in lexicographic
order, pruning any branch whose coverage can no longer reach every vertex.
The secure condition is only checked on fully dominating candidates.
"""

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.core.config import PARAM_ALIASES, settings
from src.core.exceptions import CapExceededError, InvariantViolation, PreconditionError
from src.core.monitoring import LogLevel, log_event, monitor_execution_time, track_metric
from src.models.digraph import Digraph, ParamKind, VertexSet, iter_bits, mask_of, popcount
from src.services.verifiers import (
    BASE_COVERAGE,
    DefenseWitness,
    dominates,
    is_secure_set,
    is_set,
    secure_bits,
)


@dataclass(frozen=True)
class SolverConfig:
    """Caps and the worker hint for exact solving."""
    size_cap: int = field(default_factory=lambda: settings.SIZE_CAP)
    thread_hint: int = field(default_factory=lambda: settings.THREAD_HINT)


@dataclass
class SolveResult:
    kind: ParamKind
    value: int
    witness: VertexSet
    defense: DefenseWitness
    nodes_explored: int
    forced: VertexSet
    lower_bound: int = 1
    engine: str = "branch_and_bound"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "value": self.value,
            "witness": self.witness.one_based(),
            "defenders": self.defense.to_dict(),
            "nodes_explored": self.nodes_explored,
            "forced": self.forced.one_based(),
            "lower_bound": self.lower_bound,
        }


# (smaller, larger, needs a digraph without symmetric arcs)
INEQUALITY_CHAIN: Tuple[Tuple[ParamKind, ParamKind, bool], ...] = (
    (ParamKind.GAMMA_S, ParamKind.GAMMA_OS, False),
    (ParamKind.GAMMA_S, ParamKind.GAMMA_SO, False),
    (ParamKind.GAMMA_PLUS, ParamKind.GAMMA_OS, False),
    (ParamKind.GAMMA_PLUS, ParamKind.GAMMA_SO, False),
    (ParamKind.GAMMA_SO, ParamKind.GAMMA_OSO, False),
    (ParamKind.GAMMA_SO, ParamKind.GAMMA_ISO, False),
    (ParamKind.GAMMA_OS, ParamKind.GAMMA_OSO, False),
    (ParamKind.GAMMA_OS, ParamKind.GAMMA_ISO, True),
)

_OUT_BASED = (
    ParamKind.GAMMA_PLUS,
    ParamKind.GAMMA_SO,
    ParamKind.GAMMA_OS,
    ParamKind.GAMMA_OSO,
    ParamKind.GAMMA_ISO,
)


def _coverage_tables(digraph: Digraph, kind: ParamKind) -> List[List[int]]:
    """Per-vertex closed coverage masks that every solution must jointly fill."""
    n = digraph.n
    if kind is ParamKind.GAMMA_MINUS:
        return [[digraph.closed_in(u) for u in range(n)]]
    if kind is ParamKind.GAMMA_S:
        return [[digraph.underlying_adj(u) | 1 << u for u in range(n)]]
    if kind is ParamKind.GAMMA_TWIN:
        return [
            [digraph.closed_out(u) for u in range(n)],
            [digraph.closed_in(u) for u in range(n)],
        ]
    return [[digraph.closed_out(u) for u in range(n)]]


def forced_vertices(digraph: Digraph, kind: ParamKind) -> VertexSet:
    """Vertices that belong to every set of the given kind."""
    n = digraph.n
    no_in = [not digraph.in_adj[u] for u in range(n)]
    no_out = [not digraph.out_adj[u] for u in range(n)]

    if kind in (ParamKind.GAMMA_PLUS, ParamKind.GAMMA_SO, ParamKind.GAMMA_OSO, ParamKind.GAMMA_OS):
        chosen = [u for u in range(n) if no_in[u]]
    elif kind in (ParamKind.GAMMA_ISO, ParamKind.GAMMA_TWIN):
        chosen = [u for u in range(n) if no_in[u] or no_out[u]]
    elif kind is ParamKind.GAMMA_MINUS:
        chosen = [u for u in range(n) if no_out[u]]
    else:
        chosen = [u for u in range(n) if no_in[u] and no_out[u]]
    return VertexSet(mask_of(chosen), n)


def lower_bound(digraph: Digraph, kind: ParamKind) -> int:
    """Best applicable lower bound on the parameter, never below 1."""
    n = digraph.n
    stats = digraph.degree_stats()
    bounds = [1]

    if kind in _OUT_BASED:
        bounds.append(math.ceil(n / (stats.max_out + 1)))
    elif kind is ParamKind.GAMMA_MINUS:
        bounds.append(math.ceil(n / (stats.max_in + 1)))
    elif kind is ParamKind.GAMMA_TWIN:
        bounds.append(math.ceil(n / (stats.max_out + 1)))
        bounds.append(math.ceil(n / (stats.max_in + 1)))
    else:
        max_degree = max(popcount(digraph.underlying_adj(u)) for u in range(n))
        bounds.append(math.ceil(n / (max_degree + 1)))

    strict = kind in (ParamKind.GAMMA_SO, ParamKind.GAMMA_OSO, ParamKind.GAMMA_ISO)
    if strict and not digraph.has_symmetric_arcs():
        if n >= 2:
            bounds.append(2)
        if stats.max_out >= 1:
            bounds.append(math.ceil((n + 1) / (stats.max_out + 1)))
            if kind is ParamKind.GAMMA_OSO:
                bounds.append(math.ceil(2 * n / (2 * stats.max_out + 1)))

    return min(max(bounds), n)


def _leaf_valid(digraph: Digraph, bits: int, kind: ParamKind) -> bool:
    set_kind = kind.set_kind
    if kind.is_secure or kind is ParamKind.GAMMA_S:
        return secure_bits(digraph, bits, set_kind)
    return dominates(digraph, bits, BASE_COVERAGE[set_kind])


class _CardinalitySearch:
    """Lexicographic DFS over supersets of the forced set with a fixed size."""

    def __init__(self, digraph: Digraph, kind: ParamKind, forced: int):
        self.digraph = digraph
        self.kind = kind
        self.full = digraph.full_mask
        self.forced = forced
        self.free = [u for u in range(digraph.n) if not forced >> u & 1]
        self.tables = _coverage_tables(digraph, kind)

        m = len(self.free)
        self.suffix: List[List[int]] = []
        for table in self.tables:
            suffix = [0] * (m + 1)
            for i in range(m - 1, -1, -1):
                suffix[i] = suffix[i + 1] | table[self.free[i]]
            self.suffix.append(suffix)
        self.max_gain = [
            max((popcount(table[u]) for u in self.free), default=0) for table in self.tables
        ]
        self.base_cover = tuple(self._cover_of(forced, t) for t in range(len(self.tables)))

    def _cover_of(self, bits: int, t: int) -> int:
        table = self.tables[t]
        result = 0
        for u in iter_bits(bits):
            result |= table[u]
        return result

    def _feasible(self, cover: Tuple[int, ...], start: int, remaining: int) -> bool:
        for t, c in enumerate(cover):
            if c | self.suffix[t][start] != self.full:
                return False
            if popcount(self.full & ~c) > remaining * self.max_gain[t]:
                return False
        return True

    def branches(self, picks: int) -> List[int]:
        """Top-level free positions that survive pruning."""
        result = []
        for i in range(len(self.free) - picks + 1):
            if not self._feasible(self.base_cover, i, picks):
                break
            result.append(i)
        return result

    def run_branch(self, i: int, picks: int) -> Tuple[Optional[int], int]:
        counter = [0]
        u = self.free[i]
        cover = tuple(c | self.tables[t][u] for t, c in enumerate(self.base_cover))
        found = self._dfs(i + 1, self.forced | 1 << u, cover, picks - 1, counter)
        return found, counter[0]

    def run_root(self) -> Tuple[Optional[int], int]:
        if all(c == self.full for c in self.base_cover) and _leaf_valid(self.digraph, self.forced, self.kind):
            return self.forced, 1
        return None, 1

    def _dfs(self, start: int, bits: int, cover: Tuple[int, ...], remaining: int, counter: List[int]) -> Optional[int]:
        counter[0] += 1
        if remaining == 0:
            if all(c == self.full for c in cover) and _leaf_valid(self.digraph, bits, self.kind):
                return bits
            return None
        for i in range(start, len(self.free) - remaining + 1):
            if not self._feasible(cover, i, remaining):
                break
            u = self.free[i]
            next_cover = tuple(c | self.tables[t][u] for t, c in enumerate(cover))
            found = self._dfs(i + 1, bits | 1 << u, next_cover, remaining - 1, counter)
            if found is not None:
                return found
        return None


def _search_cardinality(search: _CardinalitySearch, picks: int, threads: int) -> Tuple[Optional[int], int]:
    if picks == 0:
        return search.run_root()

    nodes = 1
    branches = search.branches(picks)
    if threads > 1 and len(branches) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(lambda i: search.run_branch(i, picks), branches))
    else:
        outcomes = []
        for i in branches:
            outcomes.append(search.run_branch(i, picks))
            if outcomes[-1][0] is not None:
                break

    # combine by lexicographic minimum: the first branch holding a solution wins
    for found, count in outcomes:
        nodes += count
        if found is not None:
            return found, nodes
    return None, nodes


def _check_size(digraph: Digraph, cap: int, cap_name: str) -> None:
    if digraph.n > cap:
        raise CapExceededError(cap_name, cap, digraph.n)


def _defense_for(digraph: Digraph, kind: ParamKind, witness: VertexSet) -> DefenseWitness:
    if kind.is_secure or kind is ParamKind.GAMMA_S:
        _, defense = is_secure_set(digraph, witness, kind.set_kind)
        return defense
    return DefenseWitness()


@monitor_execution_time
def solve_min(digraph: Digraph, kind: ParamKind, config: SolverConfig = None) -> SolveResult:
    """Exact minimum with the lexicographically smallest minimum witness."""
    config = config or SolverConfig()
    _check_size(digraph, config.size_cap, "size_cap")
    start_time = time.perf_counter()

    try:
        forced = forced_vertices(digraph, kind)
        bound = lower_bound(digraph, kind)
        search = _CardinalitySearch(digraph, kind, forced.bits)
        nodes = 0
        witness_bits = None

        for k in range(max(len(forced), bound), digraph.n + 1):
            witness_bits, explored = _search_cardinality(search, k - len(forced), config.thread_hint)
            nodes += explored
            if witness_bits is not None:
                break

        if witness_bits is None:
            raise InvariantViolation(f"no {kind.value} set found, not even the full vertex set")

        witness = VertexSet(witness_bits, digraph.n)
        result = SolveResult(
            kind=kind,
            value=len(witness),
            witness=witness,
            defense=_defense_for(digraph, kind, witness),
            nodes_explored=nodes,
            forced=forced,
            lower_bound=bound,
        )
    except Exception as e:
        log_event("solve_min_failed", {"kind": kind.value, "n": digraph.n, "error": str(e)}, LogLevel.ERROR)
        raise

    duration = time.perf_counter() - start_time
    track_metric("solver_runs_total", 1, {"param": kind.value, "engine": result.engine})
    track_metric("solver_nodes_explored_total", nodes, {"param": kind.value})
    track_metric("solver_duration_seconds", duration, {"param": kind.value})
    log_event("solve_min_completed", {
        "kind": kind.value,
        "n": digraph.n,
        "value": result.value,
        "nodes_explored": nodes,
    }, LogLevel.DEBUG)
    return result


def brute_oracle(digraph: Digraph, kind: ParamKind, cap: int = None) -> SolveResult:
    """Plain cardinality-then-lexicographic enumeration using only the definitions."""
    cap = settings.ORACLE_CAP if cap is None else cap
    _check_size(digraph, min(cap, settings.ORACLE_CAP), "oracle_cap")

    n = digraph.n
    set_kind = kind.set_kind
    examined = 0
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            examined += 1
            candidate = VertexSet(mask_of(combo), n)
            if is_set(digraph, candidate, set_kind):
                track_metric("solver_runs_total", 1, {"param": kind.value, "engine": "brute_force"})
                return SolveResult(
                    kind=kind,
                    value=k,
                    witness=candidate,
                    defense=_defense_for(digraph, kind, candidate),
                    nodes_explored=examined,
                    forced=forced_vertices(digraph, kind),
                    lower_bound=0,
                    engine="brute_force",
                )
    raise InvariantViolation(f"brute force found no {kind.value} set")


def check_chain(digraph: Digraph, results: Dict[ParamKind, SolveResult]) -> List[Tuple[ParamKind, ParamKind]]:
    """Return the violated (smaller, larger) pairs of the inequality chain."""
    symmetric = digraph.has_symmetric_arcs()
    violated = []
    for smaller, larger, needs_asymmetric in INEQUALITY_CHAIN:
        if needs_asymmetric and symmetric:
            continue
        if smaller in results and larger in results and results[smaller].value > results[larger].value:
            violated.append((smaller, larger))
    return violated


def solve_all(digraph: Digraph, config: SolverConfig = None,
              kinds: Sequence[ParamKind] = tuple(ParamKind)) -> Dict[ParamKind, SolveResult]:
    """All requested parameters; the inequality chain is checked before returning."""
    results = {kind: solve_min(digraph, kind, config) for kind in kinds}
    violated = check_chain(digraph, results)
    if violated:
        pairs = [f"{a.value}<={b.value}" for a, b in violated]
        log_event("inequality_chain_violated", {"pairs": pairs, "arcs": digraph.to_dict()["arcs"]}, LogLevel.CRITICAL)
        raise InvariantViolation(f"inequality chain violated: {', '.join(pairs)}")
    return results


def parse_param(name: str) -> ParamKind:
    """Resolve a CLI spelling or enum value to a ParamKind."""
    lowered = name.strip().lower()
    for value, aliases in PARAM_ALIASES.items():
        if lowered == value or lowered in aliases:
            return ParamKind(value)
    raise PreconditionError(f"unknown parameter '{name}'")
