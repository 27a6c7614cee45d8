"""Digraph and graph file format tests."""

import pytest

from scripts.seed_corpus import seed_corpus
from src.core.exceptions import ParseError
from src.models.digraph import UndirectedGraph
from src.services.formats import input_digest, parse_digraph, parse_graph, serialize_digraph, serialize_graph
from src.services.generators import dipath, reference_fixture


def test_serialization_is_canonical():
    text = serialize_digraph(dipath(3))
    assert text == "p digraph 3 2\na 1 2\na 2 3\n"


def test_parse_accepts_comments_and_any_arc_order():
    text = "c a comment\np digraph 3 2\nc another\na 2 3\na 1 2\n"
    assert parse_digraph(text) == dipath(3)


def test_fixture_survives_serialization():
    fixture = reference_fixture()
    assert parse_digraph(serialize_digraph(fixture, ["fixture"])) == fixture


@pytest.mark.parametrize(
    "text, line_no",
    [
        ("p digraph 3 1\na 1 1\n", 2),
        ("p digraph 3 1\na 1 4\n", 2),
        ("p digraph 3 2\na 1 2\na 1 2\n", 3),
        ("a 1 2\np digraph 3 1\n", 1),
        ("p digraph 3 1\nx 1 2\n", 2),
        ("p digraph 3 1\na 1\n", 2),
        ("p digraph 3 1\na one 2\n", 2),
        ("p graph 3 1\na 1 2\n", 1),
        ("p digraph 3 1\np digraph 3 1\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line_no):
    with pytest.raises(ParseError) as exc:
        parse_digraph(text)
    assert exc.value.line_no == line_no
    assert str(exc.value).startswith(f"line {line_no}:")


def test_missing_header():
    with pytest.raises(ParseError):
        parse_digraph("c nothing here\n")


def test_arc_count_mismatch():
    with pytest.raises(ParseError):
        parse_digraph("p digraph 3 2\na 1 2\n")


def test_graph_format():
    g = parse_graph("p graph 4 3\ne 2 1\ne 2 3\ne 3 4\n")
    assert g.edges == ((0, 1), (1, 2), (2, 3))
    assert serialize_graph(g) == "p graph 4 3\ne 1 2\ne 2 3\ne 3 4\n"


def test_graph_duplicate_edge_in_either_direction():
    with pytest.raises(ParseError) as exc:
        parse_graph("p graph 3 2\ne 1 2\ne 2 1\n")
    assert exc.value.line_no == 3


def test_input_digest_ignores_comments_and_order():
    a = parse_digraph("p digraph 3 2\na 2 3\na 1 2\n")
    b = parse_digraph("c x\np digraph 3 2\na 1 2\na 2 3\n")
    assert input_digest(a) == input_digest(b)
    assert input_digest(a).startswith("sha256:")
    assert input_digest(a) != input_digest(UndirectedGraph.from_edges(3, [(0, 1), (1, 2)]))


def test_seed_corpus_files_parse(tmp_path):
    paths = seed_corpus(tmp_path / "corpus")
    assert len(paths) == 18
    for path in paths:
        text = path.read_text(encoding="utf-8")
        parsed = parse_digraph(text) if path.suffix == ".dg" else parse_graph(text)
        assert parsed.n >= 2
    assert parse_digraph((tmp_path / "corpus" / "fixture.dg").read_text(encoding="utf-8")) == reference_fixture()
