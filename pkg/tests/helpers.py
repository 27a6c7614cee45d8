"""Small helpers shared by the test modules."""

from src.models.digraph import VertexSet


def one_based(n: int, *vertices: int) -> VertexSet:
    """VertexSet from 1-based labels."""
    return VertexSet.from_indices(n, [v - 1 for v in vertices])
