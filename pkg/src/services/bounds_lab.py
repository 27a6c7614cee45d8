"""
Bound catalogue evaluation and counterexample hunting.

This module evaluates every stated inequality and equality characterization
against exact parameter values, computes longest directed paths and cycles
exactly, and scans small digraphs for counterexamples to the two-thirds
conjecture on minimum-degree-one digraphs.

Each catalogue entry carries an explicit applicability guard. A failing
applicable entry is never swallowed: `bound_report` raises BoundViolation
with the serialized digraph attached.
"""

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from src.core.config import settings
from src.core.exceptions import BoundViolation, CapExceededError, InvariantViolation, PreconditionError
from src.core.monitoring import LogLevel, log_event, monitor_execution_time, track_metric
from src.models.digraph import Digraph, ParamKind, iter_bits, popcount
from src.services.constructions import universal_pair
from src.services.formats import serialize_digraph
from src.services.generators import enumerate_digraphs, make_rng, random_digraph_from
from src.services.solver import INEQUALITY_CHAIN, SolveResult, SolverConfig, brute_oracle, solve_all, solve_min


def _check_cap(digraph: Digraph, cap: Optional[int]) -> None:
    cap = settings.PATH_SEARCH_CAP if cap is None else cap
    if digraph.n > cap:
        raise CapExceededError("path_search_cap", cap, digraph.n)


def longest_dipath_length(digraph: Digraph, cap: int = None) -> int:
    """Arc count of a longest directed path (exact)."""
    _check_cap(digraph, cap)
    graph = digraph.to_networkx()
    if nx.is_directed_acyclic_graph(graph):
        return nx.dag_longest_path_length(graph)

    target = digraph.n - 1
    best = 0

    def extend(v: int, visited: int, length: int) -> bool:
        nonlocal best
        best = max(best, length)
        if best == target:
            return True
        for w in iter_bits(digraph.out_adj[v] & ~visited):
            if extend(w, visited | 1 << w, length + 1):
                return True
        return False

    for s in range(digraph.n):
        if extend(s, 1 << s, 0):
            break
    return best


def longest_dicycle_length(digraph: Digraph, cap: int = None) -> int:
    """Arc count of a longest directed cycle, 0 when acyclic; digons count as 2."""
    _check_cap(digraph, cap)
    best = 0

    # cycles are enumerated from their smallest vertex s through vertices above s
    def extend(s: int, v: int, visited: int, length: int) -> bool:
        nonlocal best
        if digraph.out_adj[v] >> s & 1 and length + 1 > best:
            best = length + 1
            if best == digraph.n:
                return True
        above = digraph.out_adj[v] & ~visited & ~((1 << (s + 1)) - 1)
        for w in iter_bits(above):
            if extend(s, w, visited | 1 << w, length + 1):
                return True
        return False

    for s in range(digraph.n):
        if digraph.n - s <= best:
            break
        if extend(s, s, 1 << s, 0):
            break
    return best


def equals_n_characterization(digraph: Digraph) -> bool:
    """Every vertex is a source or a sink."""
    return all(not digraph.out_adj[u] or not digraph.in_adj[u] for u in range(digraph.n))


def _is_star(digraph: Digraph) -> bool:
    """Underlying graph is K_{1,n-1}."""
    n = digraph.n
    if n < 2:
        return False
    degrees = sorted(popcount(digraph.underlying_adj(u)) for u in range(n))
    edges = sum(degrees) // 2
    return edges == n - 1 and degrees[-1] == n - 1


def _is_directed_triangle(digraph: Digraph) -> bool:
    return digraph.n == 3 and digraph.arc_count == 3 and not digraph.has_symmetric_arcs() and all(
        digraph.out_degree(u) == 1 for u in range(3)
    )


class EntryType(Enum):
    INEQUALITY = "inequality"
    CHARACTERIZATION = "characterization"


@dataclass
class BoundEntry:
    bound_id: str
    statement: str
    entry_type: EntryType
    applicable: bool
    reason: str
    lhs: int = 0
    rhs: int = 0
    holds: bool = True
    slack: int = 0

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["entry_type"] = self.entry_type.value
        return data


@dataclass
class BoundReport:
    entries: List[BoundEntry] = field(default_factory=list)
    longest_path: int = 0
    longest_cycle: int = 0

    def violations(self) -> List[BoundEntry]:
        return [e for e in self.entries if e.applicable and not e.holds]

    def entry(self, bound_id: str) -> BoundEntry:
        for e in self.entries:
            if e.bound_id == bound_id:
                return e
        raise KeyError(bound_id)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "longest_path": self.longest_path,
            "longest_cycle": self.longest_cycle,
            "entries": [e.to_dict() for e in self.entries],
        }


@dataclass(frozen=True)
class _Facts:
    """Quantities the guards and formulas read."""
    n: int
    max_out: int
    min_in: int
    min_degree: int
    symmetric: bool
    tournament: bool
    connected: bool
    has_source: bool
    has_arc: bool
    has_pair_vertex: bool
    universal_pair: bool
    longest_path: int
    longest_cycle: int


def _facts(digraph: Digraph, path_cap: Optional[int]) -> _Facts:
    stats = digraph.degree_stats()
    return _Facts(
        n=digraph.n,
        max_out=stats.max_out,
        min_in=stats.min_in,
        min_degree=stats.min_degree,
        symmetric=digraph.has_symmetric_arcs(),
        tournament=digraph.is_tournament(),
        connected=digraph.is_weakly_connected(),
        has_source=len(digraph.sources()) > 0,
        has_arc=digraph.arc_count > 0,
        has_pair_vertex=any(digraph.in_adj[u] and digraph.out_adj[u] for u in range(digraph.n)),
        universal_pair=digraph.n >= 2 and universal_pair(digraph) is not None,
        longest_path=longest_dipath_length(digraph, path_cap),
        longest_cycle=longest_dicycle_length(digraph, path_cap),
    )


Guard = Tuple[Callable[[_Facts], bool], str]

NO_SYMMETRIC: Guard = (lambda f: not f.symmetric, "no symmetric arcs")
NONTRIVIAL: Guard = (lambda f: f.n >= 2, "n >= 2")
HAS_OUT_ARC: Guard = (lambda f: f.max_out >= 1, "max out-degree >= 1")
TOURNAMENT: Guard = (lambda f: f.tournament, "tournament")
MIN_DEGREE_POSITIVE: Guard = (lambda f: f.min_degree > 0, "min degree > 0")
CONNECTED: Guard = (lambda f: f.connected, "weakly connected")
HAS_ARC: Guard = (lambda f: f.has_arc, "at least one arc")
HAS_SOURCE: Guard = (lambda f: f.has_source, "has a source")
AT_LEAST_THREE: Guard = (lambda f: f.n >= 3, "n >= 3")
PAIR_VERTEX: Guard = (lambda f: f.has_pair_vertex, "some vertex has an in- and an out-neighbor")
UNIVERSAL_PAIR: Guard = (lambda f: f.universal_pair, "a universal out/in pair exists")
CYCLE_THREE: Guard = (lambda f: f.longest_cycle >= 3, "longest cycle >= 3")

Value = Callable[[_Facts, Dict[ParamKind, int]], int]


@dataclass(frozen=True)
class _Inequality:
    bound_id: str
    statement: str
    lhs: Value
    rhs: Value
    guards: Tuple[Guard, ...] = ()


@dataclass(frozen=True)
class _Characterization:
    bound_id: str
    statement: str
    predicted: Callable[[Digraph, _Facts], bool]
    actual: Callable[[_Facts, Dict[ParamKind, int]], bool]
    guards: Tuple[Guard, ...] = ()


P = ParamKind


def _param(kind: ParamKind) -> Value:
    return lambda f, v: v[kind]


def _const(fn: Callable[[_Facts], int]) -> Value:
    return lambda f, v: fn(f)


def _log2_ceil(x: int) -> int:
    return math.ceil(math.log2(x)) if x > 1 else 0


def _chain_entries() -> List[_Inequality]:
    entries = []
    for smaller, larger, needs_asymmetric in INEQUALITY_CHAIN:
        short_a = smaller.value.replace("gamma_", "")
        short_b = larger.value.replace("gamma_", "")
        entries.append(_Inequality(
            f"chain.{short_a}_le_{short_b}",
            f"{smaller.symbol} <= {larger.symbol}",
            _param(smaller),
            _param(larger),
            (NO_SYMMETRIC,) if needs_asymmetric else (),
        ))
    return entries


CATALOGUE: List[Any] = _chain_entries() + [
    _Inequality(
        "oso.lower.two_outdegree", "ceil(2n/(2Δ⁺+1)) <= γ_oso",
        _const(lambda f: math.ceil(2 * f.n / (2 * f.max_out + 1))), _param(P.GAMMA_OSO),
        (NO_SYMMETRIC, HAS_OUT_ARC),
    ),
    _Inequality(
        "oso.upper.min_degree", "γ_oso <= n - δ⁰",
        _param(P.GAMMA_OSO), _const(lambda f: f.n - f.min_degree),
    ),
    _Inequality(
        "oso.upper.longest_path", "γ_oso <= n - floor((l+1)/3)",
        _param(P.GAMMA_OSO), _const(lambda f: f.n - (f.longest_path + 1) // 3),
    ),
    _Inequality(
        "oso.upper.longest_cycle", "γ_oso <= n - floor(c/3)",
        _param(P.GAMMA_OSO), _const(lambda f: f.n - f.longest_cycle // 3),
    ),
    _Inequality(
        "oso.upper.pair_vertex", "γ_oso <= n - 1",
        _param(P.GAMMA_OSO), _const(lambda f: f.n - 1), (PAIR_VERTEX,),
    ),
    _Inequality(
        "os.upper.longest_path", "γ_os <= n - floor((l+1)/2)",
        _param(P.GAMMA_OS), _const(lambda f: f.n - (f.longest_path + 1) // 2),
    ),
    _Inequality(
        "os.upper.longest_cycle", "γ_os <= n - floor(c/2)",
        _param(P.GAMMA_OS), _const(lambda f: f.n - f.longest_cycle // 2),
    ),
    _Inequality(
        "os.upper.out_plus_in", "γ_os <= γ⁺ + γ⁻",
        _param(P.GAMMA_OS), lambda f, v: v[P.GAMMA_PLUS] + v[P.GAMMA_MINUS], (NO_SYMMETRIC,),
    ),
    _Inequality(
        "os.upper.n_minus_one", "γ_os <= n - 1",
        _param(P.GAMMA_OS), _const(lambda f: f.n - 1), (NONTRIVIAL, HAS_ARC),
    ),
    _Inequality(
        "os.upper.twin", "γ_os <= γ*",
        _param(P.GAMMA_OS), _param(P.GAMMA_TWIN), (NO_SYMMETRIC, MIN_DEGREE_POSITIVE),
    ),
    _Inequality(
        "os.upper.two_thirds", "γ_os <= floor(2n/3)",
        _param(P.GAMMA_OS), _const(lambda f: 2 * f.n // 3), (NO_SYMMETRIC, MIN_DEGREE_POSITIVE),
    ),
    _Inequality(
        "twin.upper.two_thirds", "γ* <= floor(2n/3)",
        _param(P.GAMMA_TWIN), _const(lambda f: 2 * f.n // 3), (MIN_DEGREE_POSITIVE,),
    ),
    _Inequality(
        "tournament.os.log", "γ_os(T) <= ceil(log2 n)",
        _param(P.GAMMA_OS), _const(lambda f: _log2_ceil(f.n)), (TOURNAMENT, NONTRIVIAL),
    ),
    _Inequality(
        "so.lower.outdegree", "ceil((n+1)/(Δ⁺+1)) <= γ_so",
        _const(lambda f: math.ceil((f.n + 1) / (f.max_out + 1))), _param(P.GAMMA_SO),
        (NO_SYMMETRIC, HAS_OUT_ARC),
    ),
    _Inequality(
        "oso.lower.outdegree", "ceil((n+1)/(Δ⁺+1)) <= γ_oso",
        _const(lambda f: math.ceil((f.n + 1) / (f.max_out + 1))), _param(P.GAMMA_OSO),
        (NO_SYMMETRIC, HAS_OUT_ARC),
    ),
    _Inequality(
        "iso.lower.outdegree", "ceil((n+1)/(Δ⁺+1)) <= γ_iso",
        _const(lambda f: math.ceil((f.n + 1) / (f.max_out + 1))), _param(P.GAMMA_ISO),
        (NO_SYMMETRIC, HAS_OUT_ARC),
    ),
    _Inequality(
        "so.upper.longest_path", "γ_so <= n - floor((2l+2)/5)",
        _param(P.GAMMA_SO), _const(lambda f: f.n - (2 * f.longest_path + 2) // 5),
    ),
    _Inequality(
        "so.upper.longest_cycle", "γ_so <= n - floor(2c/5)",
        _param(P.GAMMA_SO), _const(lambda f: f.n - 2 * f.longest_cycle // 5), (CYCLE_THREE,),
    ),
    _Inequality(
        "tournament.so.out_plus_one", "γ_so(T) <= γ⁺(T) + 1",
        _param(P.GAMMA_SO), lambda f, v: v[P.GAMMA_PLUS] + 1, (TOURNAMENT,),
    ),
    _Inequality(
        "tournament.so.log", "γ_so(T) <= ceil(log2 n) + 1",
        _param(P.GAMMA_SO), _const(lambda f: _log2_ceil(f.n) + 1), (TOURNAMENT, NONTRIVIAL),
    ),
    _Inequality(
        "iso.upper.in_degree", "γ_iso <= n - δ⁻",
        _param(P.GAMMA_ISO), _const(lambda f: f.n - f.min_in),
    ),
    _Inequality(
        "iso.upper.longest_path", "γ_iso <= n - floor((l+1)/3)",
        _param(P.GAMMA_ISO), _const(lambda f: f.n - (f.longest_path + 1) // 3),
    ),
    _Inequality(
        "iso.upper.longest_cycle", "γ_iso <= n - floor(c/3)",
        _param(P.GAMMA_ISO), _const(lambda f: f.n - f.longest_cycle // 3),
    ),
    _Inequality(
        "iso.upper.pair_vertex", "γ_iso <= n - 1",
        _param(P.GAMMA_ISO), _const(lambda f: f.n - 1), (PAIR_VERTEX,),
    ),
    _Inequality(
        "iso.upper.universal_pair", "γ_iso <= 2",
        _param(P.GAMMA_ISO), _const(lambda f: 2), (UNIVERSAL_PAIR,),
    ),
    _Inequality(
        "tournament.oso.lower_two", "2 <= γ_oso(T)",
        _const(lambda f: 2), _param(P.GAMMA_OSO), (TOURNAMENT, NONTRIVIAL),
    ),
    _Inequality(
        "tournament.oso.two_thirds", "γ_oso(T) <= ceil(2n/3)",
        _param(P.GAMMA_OSO), _const(lambda f: math.ceil(2 * f.n / 3)), (TOURNAMENT, NONTRIVIAL),
    ),
    _Inequality(
        "tournament.oso.source_log", "γ_oso(T) <= ceil(log2(n-1)) + 1",
        _param(P.GAMMA_OSO), _const(lambda f: _log2_ceil(f.n - 1) + 1), (TOURNAMENT, HAS_SOURCE, AT_LEAST_THREE),
    ),
    _Inequality(
        "so.lower.two", "2 <= γ_so",
        _const(lambda f: 2), _param(P.GAMMA_SO), (NONTRIVIAL, NO_SYMMETRIC),
    ),
    _Inequality(
        "oso.lower.two", "2 <= γ_oso",
        _const(lambda f: 2), _param(P.GAMMA_OSO), (NONTRIVIAL, NO_SYMMETRIC),
    ),
    _Inequality(
        "iso.lower.two", "2 <= γ_iso",
        _const(lambda f: 2), _param(P.GAMMA_ISO), (NONTRIVIAL, NO_SYMMETRIC),
    ),
    _Characterization(
        "oso.equals_n", "γ_oso = n iff every vertex is a source or a sink",
        lambda d, f: equals_n_characterization(d), lambda f, v: v[P.GAMMA_OSO] == f.n,
    ),
    _Characterization(
        "so.equals_n", "γ_so = n iff every vertex is a source or a sink",
        lambda d, f: equals_n_characterization(d), lambda f, v: v[P.GAMMA_SO] == f.n,
    ),
    _Characterization(
        "iso.equals_n", "γ_iso = n iff every vertex is a source or a sink",
        lambda d, f: equals_n_characterization(d), lambda f, v: v[P.GAMMA_ISO] == f.n,
    ),
    _Characterization(
        "os.equals_n_minus_one", "γ_os = n - 1 iff D is the directed C3 or its underlying graph is a star",
        lambda d, f: _is_directed_triangle(d) or _is_star(d), lambda f, v: v[P.GAMMA_OS] == f.n - 1,
        (CONNECTED, NONTRIVIAL),
    ),
    _Characterization(
        "tournament.os.equals_one", "γ_os(T) = 1 iff T has a source",
        lambda d, f: f.has_source, lambda f, v: v[P.GAMMA_OS] == 1, (TOURNAMENT,),
    ),
]


def _applicability(guards: Sequence[Guard], facts: _Facts) -> Tuple[bool, str]:
    failed = [label for check, label in guards if not check(facts)]
    if failed:
        return False, "requires " + ", ".join(failed)
    return True, "; ".join(label for _, label in guards) or "unconditional"


def _evaluate(item: Any, digraph: Digraph, facts: _Facts, values: Dict[ParamKind, int]) -> BoundEntry:
    applicable, reason = _applicability(item.guards, facts)
    if isinstance(item, _Inequality):
        entry = BoundEntry(item.bound_id, item.statement, EntryType.INEQUALITY, applicable, reason)
        entry.lhs = item.lhs(facts, values)
        entry.rhs = item.rhs(facts, values)
        entry.holds = entry.lhs <= entry.rhs
        entry.slack = entry.rhs - entry.lhs
    else:
        entry = BoundEntry(item.bound_id, item.statement, EntryType.CHARACTERIZATION, applicable, reason)
        entry.lhs = int(item.predicted(digraph, facts))
        entry.rhs = int(item.actual(facts, values))
        entry.holds = entry.lhs == entry.rhs
        entry.slack = 0
    return entry


def bound_report(digraph: Digraph, params: Dict[ParamKind, SolveResult],
                 raise_on_violation: bool = True, path_cap: int = None) -> BoundReport:
    """Evaluate the whole catalogue; a failing applicable entry raises BoundViolation."""
    missing = [k.value for k in ParamKind if k not in params]
    if missing:
        raise PreconditionError(f"missing parameter values: {', '.join(missing)}")

    values = {kind: result.value for kind, result in params.items()}
    facts = _facts(digraph, path_cap)
    report = BoundReport(longest_path=facts.longest_path, longest_cycle=facts.longest_cycle)

    for item in CATALOGUE:
        entry = _evaluate(item, digraph, facts, values)
        report.entries.append(entry)
        if entry.applicable:
            track_metric("bound_checks_total", 1, {
                "bound_id": entry.bound_id,
                "outcome": "holds" if entry.holds else "violated",
            })

    violations = report.violations()
    if violations:
        counterexample = serialize_digraph(digraph)
        for entry in violations:
            log_event("bound_violated", {
                "bound_id": entry.bound_id,
                "lhs": entry.lhs,
                "rhs": entry.rhs,
                "counterexample": counterexample,
            }, LogLevel.CRITICAL)
        if raise_on_violation:
            raise BoundViolation(violations[0].bound_id, counterexample, violations[0].to_dict())
    return report


@monitor_execution_time
def survey(digraph: Digraph, config: SolverConfig = None) -> Tuple[Dict[ParamKind, SolveResult], BoundReport]:
    """All parameters followed by the full bound catalogue."""
    params = solve_all(digraph, config)
    return params, bound_report(digraph, params)


# Conjecture hunt


class SearchMode(Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


CONJECTURE_IDS = {
    ParamKind.GAMMA_OSO: "oso.two_thirds",
    ParamKind.GAMMA_ISO: "iso.two_thirds",
}


@dataclass
class HuntReport:
    conjecture_id: str
    search_mode: SearchMode
    n_range: Tuple[int, int]
    seed: Optional[int]
    digraphs_checked: int = 0
    attempts: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "conjecture_id": self.conjecture_id,
            "search_mode": self.search_mode.value,
            "n_range": list(self.n_range),
            "seed": self.seed,
            "digraphs_checked": self.digraphs_checked,
            "attempts": self.attempts,
            "counterexamples": self.counterexamples,
        }


def _min_degree_one(digraph: Digraph) -> bool:
    return all(digraph.in_adj[u] and digraph.out_adj[u] for u in range(digraph.n))


def _examine(digraph: Digraph, kind: ParamKind, config: SolverConfig, report: HuntReport) -> None:
    threshold = math.ceil(2 * digraph.n / 3)
    result = solve_min(digraph, kind, config)
    report.digraphs_checked += 1
    if result.value <= threshold:
        return

    confirmed = brute_oracle(digraph, kind)
    if confirmed.value != result.value:
        raise InvariantViolation(
            f"solver and oracle disagree on hunt candidate: {result.value} vs {confirmed.value}"
        )
    log_event("conjecture_counterexample", {
        "conjecture": report.conjecture_id,
        "n": digraph.n,
        "value": result.value,
        "threshold": threshold,
    }, LogLevel.WARNING)
    report.counterexamples.append({
        "n": digraph.n,
        "value": result.value,
        "threshold": threshold,
        "witness": result.witness.one_based(),
        "digraph": serialize_digraph(digraph),
    })


def conjecture_hunt(kind: ParamKind, mode: SearchMode, n_range: Tuple[int, int],
                    samples: int = 0, seed: Optional[int] = None, arc_prob: float = None,
                    allow_symmetric: bool = True, config: SolverConfig = None) -> HuntReport:
    """Scan digraphs with minimum degree at least one for values above ceil(2n/3)."""
    if kind not in CONJECTURE_IDS:
        raise PreconditionError(f"no conjecture registered for {kind.value}")
    lo, hi = n_range
    if lo < 1 or hi < lo:
        raise PreconditionError(f"invalid n range {lo}..{hi}")
    config = config or SolverConfig()
    report = HuntReport(CONJECTURE_IDS[kind], mode, (lo, hi), seed)

    if mode is SearchMode.EXHAUSTIVE:
        if hi > settings.EXHAUSTIVE_HUNT_MAX_N:
            raise CapExceededError("exhaustive_hunt_max_n", settings.EXHAUSTIVE_HUNT_MAX_N, hi)
        for n in range(lo, hi + 1):
            for digraph in enumerate_digraphs(n, allow_symmetric):
                report.attempts += 1
                if _min_degree_one(digraph):
                    _examine(digraph, kind, config, report)
    else:
        if seed is None:
            raise PreconditionError("sampled hunts require a seed")
        if samples < 1:
            raise PreconditionError("sampled hunts need at least one sample")
        p = settings.DEFAULT_ARC_PROB if arc_prob is None else arc_prob
        rng = make_rng(seed)
        max_attempts = samples * settings.HUNT_MAX_ATTEMPTS_FACTOR
        for n in range(lo, hi + 1):
            accepted = 0
            tries = 0
            while accepted < samples and tries < max_attempts:
                tries += 1
                digraph = random_digraph_from(rng, n, p, allow_symmetric)
                if _min_degree_one(digraph):
                    accepted += 1
                    _examine(digraph, kind, config, report)
            report.attempts += tries
            if accepted < samples:
                log_event("hunt_sampling_exhausted", {"n": n, "accepted": accepted, "attempts": tries}, LogLevel.WARNING)

    track_metric("hunt_digraphs_checked_total", report.digraphs_checked, {"conjecture": report.conjecture_id})
    log_event("conjecture_hunt_completed", {
        "conjecture": report.conjecture_id,
        "mode": mode.value,
        "checked": report.digraphs_checked,
        "counterexamples": len(report.counterexamples),
    })
    return report
