"""
Digraph family generators and corpora.

This module builds the deterministic families (directed paths and cycles,
transitive tournaments, the spider sharpness family), the seeded random
families, the worked seven-vertex reference fixture, and exhaustive corpora
of small labeled digraphs. Randomness comes from numpy's PCG64 bit generator,
so a (kind, size, seed) triple always yields the same digraph.
"""

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np

from src.core.config import GENERATOR_FAMILIES, settings
from src.core.exceptions import DigraphError, PreconditionError
from src.core.monitoring import LogLevel, log_event
from src.models.digraph import Digraph, UndirectedGraph


@dataclass(frozen=True)
class GenParams:
    """Optional parameters for gen_family."""
    seed: Optional[int] = None
    arc_prob: Optional[float] = None
    allow_symmetric: bool = True


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def dipath(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, i + 1) for i in range(n - 1)])


def dicycle(n: int) -> Digraph:
    if n < 3:
        raise DigraphError(f"a directed cycle needs at least 3 vertices, got {n}")
    return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def transitive_tournament(n: int) -> Digraph:
    return Digraph.from_arcs(n, itertools.combinations(range(n), 2))


def spider(k: int) -> Digraph:
    """Spider on w=0, u_i=i, v_i=k+i with arcs u_i->v_i and v_i->w."""
    if k < 1:
        raise DigraphError(f"spider needs k >= 1, got {k}")
    arcs = [(i, k + i) for i in range(1, k + 1)] + [(k + i, 0) for i in range(1, k + 1)]
    return Digraph.from_arcs(2 * k + 1, arcs)


def random_tournament_from(rng: np.random.Generator, n: int) -> Digraph:
    pairs = list(itertools.combinations(range(n), 2))
    flips = rng.integers(0, 2, size=len(pairs)) if pairs else []
    arcs = [(u, v) if not flip else (v, u) for (u, v), flip in zip(pairs, flips)]
    return Digraph.from_arcs(n, arcs)


def random_digraph_from(rng: np.random.Generator, n: int, arc_prob: float, allow_symmetric: bool = True) -> Digraph:
    """Each ordered pair (u, v), visited lexicographically, becomes an arc with
    probability arc_prob; without symmetric arcs a pair is skipped when its
    opposite arc was already drawn."""
    ordered = [(u, v) for u in range(n) for v in range(n) if u != v]
    draws = rng.random(len(ordered)) if ordered else []
    chosen = set()
    for (u, v), draw in zip(ordered, draws):
        if draw >= arc_prob:
            continue
        if not allow_symmetric and (v, u) in chosen:
            continue
        chosen.add((u, v))
    return Digraph.from_arcs(n, sorted(chosen))


def gen_family(kind: str, size: int, params: GenParams = None) -> Digraph:
    """Generate a family member; random kinds require a seed."""
    params = params or GenParams()
    family = GENERATOR_FAMILIES.get(kind)
    if family is None:
        raise PreconditionError(f"unknown family '{kind}'")
    if size < family["min_size"]:
        raise DigraphError(f"family {kind} needs size >= {family['min_size']}, got {size}")
    if family["random"] and params.seed is None:
        raise PreconditionError(f"family {kind} requires a seed")

    if kind == "dipath":
        digraph = dipath(size)
    elif kind == "dicycle":
        digraph = dicycle(size)
    elif kind == "transitive_tournament":
        digraph = transitive_tournament(size)
    elif kind == "spider":
        digraph = spider(size)
    elif kind == "random_tournament":
        digraph = random_tournament_from(make_rng(params.seed), size)
    else:
        arc_prob = settings.DEFAULT_ARC_PROB if params.arc_prob is None else params.arc_prob
        if not 0.0 <= arc_prob <= 1.0:
            raise PreconditionError(f"arc probability {arc_prob} outside [0, 1]")
        digraph = random_digraph_from(make_rng(params.seed), size, arc_prob, params.allow_symmetric)

    log_event("family_generated", {
        "family": kind,
        "size": size,
        "seed": params.seed,
        "n": digraph.n,
        "arcs": digraph.arc_count,
    }, LogLevel.DEBUG)
    return digraph


# Seven-vertex worked example; labels v1..v7 map to 0..6.
REFERENCE_FIXTURE_ARCS: Tuple[Tuple[int, int], ...] = (
    (4, 1), (4, 2), (4, 5), (4, 6), (4, 7),
    (5, 3), (5, 6), (5, 7),
    (1, 5), (2, 5),
    (3, 4),
)


def reference_fixture() -> Digraph:
    return Digraph.from_arcs(7, [(u - 1, v - 1) for u, v in REFERENCE_FIXTURE_ARCS])


def enumerate_digraphs(n: int, allow_symmetric: bool = True) -> Iterator[Digraph]:
    """All labeled digraphs on n vertices.

    With symmetric arcs allowed every ordered pair is free (2^(n(n-1)) digraphs);
    otherwise each unordered pair is absent, forward, or backward (3^(n(n-1)/2)).
    """
    pairs = list(itertools.combinations(range(n), 2))
    if allow_symmetric:
        ordered = [(u, v) for u in range(n) for v in range(n) if u != v]
        for mask in range(1 << len(ordered)):
            yield Digraph.from_arcs(n, [ordered[i] for i in range(len(ordered)) if mask >> i & 1])
    else:
        for states in itertools.product((0, 1, 2), repeat=len(pairs)):
            arcs: List[Tuple[int, int]] = []
            for (u, v), state in zip(pairs, states):
                if state == 1:
                    arcs.append((u, v))
                elif state == 2:
                    arcs.append((v, u))
            yield Digraph.from_arcs(n, arcs)


def random_corpus(n: int, count: int, seed: int, arc_prob: float = None,
                  allow_symmetric: bool = True) -> List[Digraph]:
    rng = make_rng(seed)
    p = settings.DEFAULT_ARC_PROB if arc_prob is None else arc_prob
    return [random_digraph_from(rng, n, p, allow_symmetric) for _ in range(count)]


def tournament_corpus(n: int, count: int, seed: int) -> List[Digraph]:
    rng = make_rng(seed)
    return [random_tournament_from(rng, n) for _ in range(count)]


def connected_graphs(max_n: int, max_edges: Optional[int] = None) -> Iterator[UndirectedGraph]:
    """Connected graphs with 1..max_n vertices from the networkx graph atlas."""
    for graph in nx.graph_atlas_g():
        order = graph.number_of_nodes()
        if order < 1 or order > max_n:
            continue
        if max_edges is not None and graph.number_of_edges() > max_edges:
            continue
        if nx.is_connected(graph):
            yield UndirectedGraph.from_networkx(graph)


def undirected_family(kind: str, n: int) -> UndirectedGraph:
    """Named undirected graphs via networkx generators."""
    builders = {
        "path": nx.path_graph,
        "cycle": nx.cycle_graph,
        "complete": nx.complete_graph,
        "star": lambda m: nx.star_graph(m - 1),
    }
    if kind not in builders:
        raise PreconditionError(f"unknown undirected family '{kind}'")
    return UndirectedGraph.from_networkx(builders[kind](n))
