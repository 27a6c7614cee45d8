"""
Domain models for digraphs, vertex sets, and parameter kinds.

This module defines the immutable bitset-backed Digraph, the VertexSet
currency used by every verifier and solver, the enumerations naming the
computable parameters and set kinds, and the undirected graphs consumed by
the orientation tools. Vertices are 0-indexed here; files and CLI output
use 1-indexed labels.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, List, Sequence, Tuple

import networkx as nx

from src.core.exceptions import DigraphError


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


class ParamKind(Enum):
    """The eight computable minimum parameters."""
    GAMMA_PLUS = "gamma_plus"
    GAMMA_MINUS = "gamma_minus"
    GAMMA_S = "gamma_s"
    GAMMA_TWIN = "gamma_twin"
    GAMMA_SO = "gamma_so"
    GAMMA_OS = "gamma_os"
    GAMMA_OSO = "gamma_oso"
    GAMMA_ISO = "gamma_iso"

    @property
    def set_kind(self) -> "SetKind":
        return _PARAM_TO_SET[self]

    @property
    def is_secure(self) -> bool:
        return self in SECURE_PARAMS

    @property
    def symbol(self) -> str:
        return _PARAM_SYMBOLS[self]


class SetKind(Enum):
    """Kinds of vertex sets a verifier can check."""
    OUT_DOMINATING = "out_dominating"
    IN_DOMINATING = "in_dominating"
    UNDERLYING_DOMINATING = "underlying_dominating"
    TWIN_DOMINATING = "twin_dominating"
    SDS = "sds"
    SODS = "sods"
    OSDS = "osds"
    OSODS = "osods"
    ISODS = "isods"

    @property
    def is_secure(self) -> bool:
        return self in SECURE_SET_KINDS


_PARAM_TO_SET = {
    ParamKind.GAMMA_PLUS: SetKind.OUT_DOMINATING,
    ParamKind.GAMMA_MINUS: SetKind.IN_DOMINATING,
    ParamKind.GAMMA_S: SetKind.SDS,
    ParamKind.GAMMA_TWIN: SetKind.TWIN_DOMINATING,
    ParamKind.GAMMA_SO: SetKind.SODS,
    ParamKind.GAMMA_OS: SetKind.OSDS,
    ParamKind.GAMMA_OSO: SetKind.OSODS,
    ParamKind.GAMMA_ISO: SetKind.ISODS,
}

_PARAM_SYMBOLS = {
    ParamKind.GAMMA_PLUS: "γ⁺",
    ParamKind.GAMMA_MINUS: "γ⁻",
    ParamKind.GAMMA_S: "γs",
    ParamKind.GAMMA_TWIN: "γ*",
    ParamKind.GAMMA_SO: "γ_so",
    ParamKind.GAMMA_OS: "γ_os",
    ParamKind.GAMMA_OSO: "γ_oso",
    ParamKind.GAMMA_ISO: "γ_iso",
}

SECURE_PARAMS = (ParamKind.GAMMA_SO, ParamKind.GAMMA_OS, ParamKind.GAMMA_OSO, ParamKind.GAMMA_ISO)
SECURE_SET_KINDS = (SetKind.SDS, SetKind.SODS, SetKind.OSDS, SetKind.OSODS, SetKind.ISODS)


@dataclass(frozen=True)
class VertexSet:
    """Subset of {0..n-1} stored as a bitset."""
    bits: int
    n: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise DigraphError(f"vertex set {self.bits:#x} exceeds universe of size {self.n}")

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "VertexSet":
        indices = list(indices)
        for i in indices:
            if not 0 <= i < n:
                raise DigraphError(f"vertex {i} out of range for n={n}")
        return cls(mask_of(indices), n)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls((1 << n) - 1, n)

    def __contains__(self, v: int) -> bool:
        return bool(self.bits >> v & 1)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def indices(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    def one_based(self) -> List[int]:
        return [i + 1 for i in iter_bits(self.bits)]

    def add(self, v: int) -> "VertexSet":
        return VertexSet(self.bits | 1 << v, self.n)

    def remove(self, v: int) -> "VertexSet":
        return VertexSet(self.bits & ~(1 << v), self.n)

    def swap(self, u: int, v: int) -> "VertexSet":
        """(S minus u) plus v."""
        return VertexSet((self.bits & ~(1 << u)) | 1 << v, self.n)

    def complement(self) -> "VertexSet":
        return VertexSet(((1 << self.n) - 1) & ~self.bits, self.n)

    def issubset(self, other: "VertexSet") -> bool:
        return self.bits & ~other.bits == 0

    def lex_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Cardinality-then-lexicographic ordering key."""
        return (len(self), self.indices())


@dataclass(frozen=True)
class DegreeStats:
    """Minimum and maximum in/out degrees; min_degree is δ⁰ = min(δ⁺, δ⁻)."""
    min_out: int
    min_in: int
    max_out: int
    max_in: int
    min_degree: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "min_out": self.min_out,
            "min_in": self.min_in,
            "max_out": self.max_out,
            "max_in": self.max_in,
            "min_degree": self.min_degree,
        }


@dataclass(frozen=True)
class Digraph:
    """Immutable loopless digraph with in/out adjacency bitsets."""
    n: int
    out_adj: Tuple[int, ...]
    in_adj: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise DigraphError("a digraph needs at least one vertex")
        if len(self.out_adj) != self.n or len(self.in_adj) != self.n:
            raise DigraphError("adjacency length does not match vertex count")
        for u in range(self.n):
            if self.out_adj[u] >> u & 1 or self.in_adj[u] >> u & 1:
                raise DigraphError(f"loop at vertex {u + 1}")
            if self.out_adj[u] >> self.n or self.in_adj[u] >> self.n:
                raise DigraphError(f"adjacency of vertex {u + 1} leaves the vertex range")
            for v in iter_bits(self.out_adj[u]):
                if not self.in_adj[v] >> u & 1:
                    raise DigraphError(f"inconsistent adjacency for arc ({u + 1},{v + 1})")
        if sum(map(popcount, self.out_adj)) != sum(map(popcount, self.in_adj)):
            raise DigraphError("in/out adjacency disagree")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Tuple[int, int]]) -> "Digraph":
        if n < 1:
            raise DigraphError(f"invalid vertex count {n}")
        out_adj = [0] * n
        in_adj = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"arc ({u},{v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise DigraphError(f"loop arc ({u},{v}) rejected")
            out_adj[u] |= 1 << v
            in_adj[v] |= 1 << u
        return cls(n, tuple(out_adj), tuple(in_adj))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def arcs(self) -> List[Tuple[int, int]]:
        """All arcs sorted by (u, v)."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.out_adj[u])]

    @property
    def arc_count(self) -> int:
        return sum(map(popcount, self.out_adj))

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_adj[u] >> v & 1)

    def out_degree(self, u: int) -> int:
        return popcount(self.out_adj[u])

    def in_degree(self, u: int) -> int:
        return popcount(self.in_adj[u])

    def closed_out(self, u: int) -> int:
        return self.out_adj[u] | 1 << u

    def closed_in(self, u: int) -> int:
        return self.in_adj[u] | 1 << u

    def underlying_adj(self, u: int) -> int:
        return self.out_adj[u] | self.in_adj[u]

    def sources(self) -> VertexSet:
        return VertexSet(mask_of(u for u in range(self.n) if not self.in_adj[u]), self.n)

    def sinks(self) -> VertexSet:
        return VertexSet(mask_of(u for u in range(self.n) if not self.out_adj[u]), self.n)

    def reverse(self) -> "Digraph":
        return Digraph(self.n, self.in_adj, self.out_adj)

    def symmetric_closure(self) -> "Digraph":
        both = tuple(self.out_adj[u] | self.in_adj[u] for u in range(self.n))
        return Digraph(self.n, both, both)

    def degree_stats(self) -> DegreeStats:
        outs = [self.out_degree(u) for u in range(self.n)]
        ins = [self.in_degree(u) for u in range(self.n)]
        return DegreeStats(
            min_out=min(outs),
            min_in=min(ins),
            max_out=max(outs),
            max_in=max(ins),
            min_degree=min(min(outs), min(ins)),
        )

    def has_symmetric_arcs(self) -> bool:
        return any(self.out_adj[u] & self.in_adj[u] for u in range(self.n))

    def is_symmetric(self) -> bool:
        return self.out_adj == self.in_adj

    def is_tournament(self) -> bool:
        for u in range(self.n):
            others = self.full_mask & ~(1 << u)
            if self.underlying_adj(u) != others or self.out_adj[u] & self.in_adj[u]:
                return False
        return True

    def is_weakly_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            reach = 0
            for u in iter_bits(frontier):
                reach |= self.underlying_adj(u)
            frontier = reach & ~seen
            seen |= frontier
        return seen == self.full_mask

    def without_arc(self, u: int, v: int) -> "Digraph":
        """Spanning subdigraph with the arc (u, v) deleted."""
        out_adj = list(self.out_adj)
        in_adj = list(self.in_adj)
        out_adj[u] &= ~(1 << v)
        in_adj[v] &= ~(1 << u)
        return Digraph(self.n, tuple(out_adj), tuple(in_adj))

    def induced_without(self, removed: int) -> Tuple["Digraph", List[int]]:
        """Subdigraph induced by the vertices outside the mask `removed`.

        Returns the subdigraph and the list mapping its vertices back to the
        original labels.
        """
        keep = [u for u in range(self.n) if not removed >> u & 1]
        index = {u: i for i, u in enumerate(keep)}
        arcs = [(index[u], index[v]) for u, v in self.arcs() if u in index and v in index]
        return Digraph.from_arcs(len(keep), arcs), keep

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.arcs())
        return graph

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "arcs": [[u + 1, v + 1] for u, v in self.arcs()]}


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph; edges are stored as sorted pairs (u < v)."""
    n: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise DigraphError("a graph needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise DigraphError(f"loop edge at vertex {u + 1}")
            if not (0 <= u < v < self.n):
                raise DigraphError(f"edge ({u},{v}) is not a sorted pair inside 0..{self.n - 1}")
            if (u, v) in seen:
                raise DigraphError(f"duplicate edge ({u + 1},{v + 1})")
            seen.add((u, v))
        if list(self.edges) != sorted(self.edges):
            raise DigraphError("edges must be sorted")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "UndirectedGraph":
        normalized = set()
        for u, v in edges:
            if u == v:
                raise DigraphError(f"loop edge at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"edge ({u},{v}) has a vertex outside 0..{n - 1}")
            normalized.add((min(u, v), max(u, v)))
        return cls(n, tuple(sorted(normalized)))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "UndirectedGraph":
        nodes = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[a], index[b]) for a, b in graph.edges()))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> Tuple[int, ...]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def degree(self, u: int) -> int:
        return sum(1 for e in self.edges if u in e)

    def to_digraph(self) -> Digraph:
        """The symmetric digraph with both arcs for every edge."""
        adj = self.adjacency()
        return Digraph(self.n, adj, adj)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


# Operation-level API


def build_digraph(n: int, arcs: Iterable[Tuple[int, int]]) -> Digraph:
    """Build a digraph; duplicate arcs collapse, loops and bad indices raise."""
    return Digraph.from_arcs(n, arcs)


def reverse(digraph: Digraph) -> Digraph:
    return digraph.reverse()


def symmetric_closure(digraph: Digraph) -> Digraph:
    return digraph.symmetric_closure()


def degree_stats(digraph: Digraph) -> DegreeStats:
    return digraph.degree_stats()


def has_symmetric_arcs(digraph: Digraph) -> bool:
    return digraph.has_symmetric_arcs()
