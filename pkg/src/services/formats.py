"""
DIMACS-like text formats for digraphs and undirected graphs.

Digraph files carry one header `p digraph <n> <m>` followed by m lines
`a <u> <v>`; undirected files use `p graph <n> <m>` with `e <u> <v>` lines.
Endpoints are 1-indexed, `c` lines are comments, and canonical serialization
sorts the arc (edge) lines by (u, v).
"""

import hashlib
from typing import List, Set, Tuple, Union

from src.core.exceptions import ParseError
from src.core.monitoring import LogLevel, log_event
from src.models.digraph import Digraph, UndirectedGraph


def _parse_pairs(text: str, header_word: str, line_tag: str, symmetric: bool) -> Tuple[int, List[Tuple[int, int]]]:
    n = None
    m = None
    pairs: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        tag = fields[0]

        if tag == "p":
            if n is not None:
                raise ParseError("second header line", line_no)
            if len(fields) != 4 or fields[1] != header_word:
                raise ParseError(f"malformed header, expected 'p {header_word} <n> <m>'", line_no)
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError("header counts must be integers", line_no) from None
            if n < 1 or m < 0:
                raise ParseError(f"invalid header counts n={n} m={m}", line_no)
            continue

        if tag != line_tag:
            raise ParseError(f"unknown line type '{tag}'", line_no)
        if n is None:
            raise ParseError(f"'{line_tag}' line before header", line_no)
        if len(fields) != 3:
            raise ParseError(f"expected '{line_tag} <u> <v>'", line_no)
        try:
            u, v = int(fields[1]), int(fields[2])
        except ValueError:
            raise ParseError("endpoints must be integers", line_no) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"endpoint out of range 1..{n}: {u} {v}", line_no)
        if u == v:
            raise ParseError(f"loop at vertex {u}", line_no)
        key = (min(u, v), max(u, v)) if symmetric else (u, v)
        if key in seen:
            raise ParseError(f"duplicate {'edge' if symmetric else 'arc'} {u} {v}", line_no)
        seen.add(key)
        pairs.append((u - 1, v - 1))

    if n is None:
        raise ParseError(f"missing 'p {header_word}' header")
    if len(pairs) != m:
        raise ParseError(f"header announces {m} lines but {len(pairs)} were found")
    return n, pairs


def parse_digraph(text: str) -> Digraph:
    """Parse the digraph format; every error carries its line number."""
    try:
        n, arcs = _parse_pairs(text, "digraph", "a", symmetric=False)
    except ParseError as e:
        log_event("digraph_parse_failed", {"error": str(e)}, LogLevel.WARNING)
        raise
    return Digraph.from_arcs(n, arcs)


def serialize_digraph(digraph: Digraph, comments: List[str] = None) -> str:
    lines = [f"c {c}" for c in comments or []]
    lines.append(f"p digraph {digraph.n} {digraph.arc_count}")
    lines.extend(f"a {u + 1} {v + 1}" for u, v in digraph.arcs())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> UndirectedGraph:
    try:
        n, edges = _parse_pairs(text, "graph", "e", symmetric=True)
    except ParseError as e:
        log_event("graph_parse_failed", {"error": str(e)}, LogLevel.WARNING)
        raise
    return UndirectedGraph.from_edges(n, edges)


def serialize_graph(graph: UndirectedGraph, comments: List[str] = None) -> str:
    lines = [f"c {c}" for c in comments or []]
    lines.append(f"p graph {graph.n} {graph.edge_count}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def input_digest(obj: Union[Digraph, UndirectedGraph]) -> str:
    """sha256 of the canonical serialization, prefixed with the algorithm."""
    text = serialize_digraph(obj) if isinstance(obj, Digraph) else serialize_graph(obj)
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()
