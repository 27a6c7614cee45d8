"""
Orientations of undirected graphs.

This module enumerates every orientation of a small undirected graph,
evaluates a parameter across all of them (the dom/DOM spectrum), and builds
the explicit orientations used by the bipartite, secure-domination and
independent-set constructions. Edges that a construction leaves free are
oriented from the lower to the higher index.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Tuple

import networkx as nx

from src.core.config import settings
from src.core.exceptions import CapExceededError, InvariantViolation, NotBipartiteError, PreconditionError
from src.core.monitoring import LogLevel, log_event, monitor_execution_time
from src.models.digraph import Digraph, ParamKind, SetKind, UndirectedGraph, VertexSet, mask_of
from src.services.solver import SolverConfig, solve_min
from src.services.verifiers import is_set


def _check_edge_cap(graph: UndirectedGraph, cap: Optional[int]) -> None:
    cap = settings.ORIENTATION_EDGE_CAP if cap is None else cap
    if graph.edge_count > cap:
        raise CapExceededError("orientation_edge_cap", cap, graph.edge_count)


def orientation_of(graph: UndirectedGraph, mask: int) -> Digraph:
    """Bit i of mask reverses edge i (sorted order) to high->low."""
    arcs = [(v, u) if mask >> i & 1 else (u, v) for i, (u, v) in enumerate(graph.edges)]
    return Digraph.from_arcs(graph.n, arcs)


def enumerate_orientations(graph: UndirectedGraph, cap: int = None) -> Iterator[Digraph]:
    """All 2^|E| orientations in increasing mask order."""
    _check_edge_cap(graph, cap)
    for mask in range(1 << graph.edge_count):
        yield orientation_of(graph, mask)


@dataclass
class OrientationSpectrum:
    kind: ParamKind
    dom: int
    DOM: int
    achieved: List[int]
    is_interval: bool
    orientations_evaluated: int
    dom_orientation: int = 0
    DOM_orientation: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "dom": self.dom,
            "DOM": self.DOM,
            "achieved": self.achieved,
            "is_interval": self.is_interval,
            "orientations_evaluated": self.orientations_evaluated,
            "dom_orientation_mask": self.dom_orientation,
            "DOM_orientation_mask": self.DOM_orientation,
        }


@monitor_execution_time
def spectrum(graph: UndirectedGraph, kind: ParamKind, config: SolverConfig = None) -> OrientationSpectrum:
    """Evaluate kind on every orientation of graph."""
    config = config or SolverConfig()
    _check_edge_cap(graph, None)
    masks = range(1 << graph.edge_count)

    def value_of(mask: int) -> int:
        return solve_min(orientation_of(graph, mask), kind, config).value

    try:
        if config.thread_hint > 1:
            with ThreadPoolExecutor(max_workers=config.thread_hint) as pool:
                values = list(pool.map(value_of, masks))
        else:
            values = [value_of(mask) for mask in masks]
    except Exception as e:
        log_event("spectrum_failed", {"kind": kind.value, "n": graph.n, "error": str(e)}, LogLevel.ERROR)
        raise

    achieved = sorted(set(values))
    dom, top = achieved[0], achieved[-1]
    result = OrientationSpectrum(
        kind=kind,
        dom=dom,
        DOM=top,
        achieved=achieved,
        is_interval=achieved == list(range(dom, top + 1)),
        orientations_evaluated=len(values),
        dom_orientation=values.index(dom),
        DOM_orientation=values.index(top),
    )
    log_event("spectrum_completed", {
        "kind": kind.value,
        "n": graph.n,
        "edges": graph.edge_count,
        "dom": dom,
        "DOM": top,
        "is_interval": result.is_interval,
    }, LogLevel.DEBUG)
    return result


def bipartition(graph: UndirectedGraph) -> Tuple[VertexSet, VertexSet]:
    """Two-colouring with the smallest vertex of each component in X."""
    nx_graph = graph.to_networkx()
    if not nx.is_bipartite(nx_graph):
        raise NotBipartiteError("graph is not bipartite")
    colouring = nx.bipartite.color(nx_graph)
    x_bits = 0
    for component in nx.connected_components(nx_graph):
        anchor = min(component)
        x_bits |= mask_of(v for v in component if colouring[v] == colouring[anchor])
    x = VertexSet(x_bits, graph.n)
    return x, x.complement()


def _check_bipartition(graph: UndirectedGraph, x: VertexSet, y: VertexSet) -> None:
    if x.bits & y.bits or (x.bits | y.bits) != (1 << graph.n) - 1:
        raise NotBipartiteError("parts must partition the vertex set")
    for u, v in graph.edges:
        if (u in x) == (v in x):
            raise NotBipartiteError(f"edge ({u + 1},{v + 1}) lies inside one part")


def bipartite_full_orientation(graph: UndirectedGraph,
                               parts: Optional[Tuple[VertexSet, VertexSet]] = None) -> Digraph:
    """Every edge oriented from Y to X, so X is all sinks and Y all sources."""
    x, y = parts if parts is not None else bipartition(graph)
    _check_bipartition(graph, x, y)
    arcs = [(v, u) if u in x else (u, v) for u, v in graph.edges]
    return Digraph.from_arcs(graph.n, arcs)


def orientation_from_sds(graph: UndirectedGraph, config: SolverConfig = None) -> Tuple[Digraph, VertexSet]:
    """Orient a minimum secure dominating set of G outward; the set is an OSDS of the result."""
    sds = solve_min(graph.to_digraph(), ParamKind.GAMMA_S, config).witness
    arcs = []
    for u, v in graph.edges:
        if v in sds and u not in sds:
            arcs.append((v, u))
        else:
            arcs.append((u, v))
    digraph = Digraph.from_arcs(graph.n, arcs)
    if not is_set(digraph, sds, SetKind.OSDS):
        log_event("orientation_from_sds_failed", {"n": graph.n, "sds": sds.one_based()}, LogLevel.CRITICAL)
        raise InvariantViolation("secure dominating set is not an OSDS of its orientation")
    return digraph, sds


def orientation_from_independent_set(graph: UndirectedGraph, independent: VertexSet) -> Digraph:
    """Orient every edge at an independent set into it; V minus the set is then an OSDS."""
    if independent.n != graph.n:
        raise PreconditionError("vertex set size does not match the graph")
    for u, v in graph.edges:
        if u in independent and v in independent:
            raise PreconditionError(f"set is not independent: edge ({u + 1},{v + 1})")
    low_degree = [v + 1 for v in independent if graph.degree(v) < 2]
    if low_degree:
        raise PreconditionError(f"vertices of degree below 2 in the set: {low_degree}")

    arcs = [(v, u) if u in independent else (u, v) for u, v in graph.edges]
    digraph = Digraph.from_arcs(graph.n, arcs)
    if not is_set(digraph, independent.complement(), SetKind.OSDS):
        raise InvariantViolation("complement of the independent set is not an OSDS")
    return digraph
