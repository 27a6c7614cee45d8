"""Shared fixtures."""

from pathlib import Path
from typing import Callable

import pytest

from src.models.digraph import Digraph, UndirectedGraph
from src.services.formats import serialize_digraph, serialize_graph
from src.services.generators import dicycle, dipath, reference_fixture


@pytest.fixture
def fixture_digraph() -> Digraph:
    return reference_fixture()

@pytest.fixture
def p4() -> Digraph:
    return dipath(4)

@pytest.fixture
def c3() -> Digraph:
    return dicycle(3)

@pytest.fixture
def write_digraph(tmp_path: Path) -> Callable[[Digraph, str], str]:
    def write(digraph: Digraph, name: str = "input.dg") -> str:
        path = tmp_path / name
        path.write_text(serialize_digraph(digraph), encoding="utf-8")
        return str(path)
    return write

@pytest.fixture
def write_graph(tmp_path: Path) -> Callable[[UndirectedGraph, str], str]:
    def write(graph: UndirectedGraph, name: str = "input.g") -> str:
        path = tmp_path / name
        path.write_text(serialize_graph(graph), encoding="utf-8")
        return str(path)
    return write
