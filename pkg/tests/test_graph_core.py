import io

import pytest

from errors import GraphFormatError, InvalidMatchingError, PathError
from fixtures import FIXTURES
from graph_core import (
    AlternatingPath, Graph, Matching, augment, augmenting_problem, ensure_matching, graph_from_text,
    parse_graph, parse_matching, serialize_graph, serialize_matching, validate_matching,
)


def test_dimacs_is_one_based_and_skips_comments():
    g = graph_from_text("c a comment\np edge 3 2\ne 1 2\nc another\ne 2 3\n")
    assert g.n == 3
    assert g.edges == [(0, 1), (1, 2)]
    assert g.edge_id(2, 1) == 1
    assert sorted(g.neighbors(1)) == [0, 2]


def test_edge_list_is_zero_based():
    g = parse_graph(io.StringIO("3 2\n0 1\n1 2\n"), 'edge-list')
    assert g.edges == [(0, 1), (1, 2)]


def test_parse_accepts_bytes_streams():
    g = parse_graph(io.BytesIO(b"p edge 2 1\ne 1 2\n"))
    assert g.m == 1


def test_isolated_vertices_survive_parsing():
    g = graph_from_text("p edge 5 1\ne 1 2\n")
    assert g.n == 5
    assert list(g.neighbors(4)) == []


@pytest.mark.parametrize('text, line_no, reason', [
    ("p edge 3 1\ne 1 1\n", 2, "self-loop"),
    ("p edge 3 2\ne 1 2\ne 2 1\n", 3, "duplicate edge"),
    ("p edge 3 1\ne 1 4\n", 2, "out of range"),
    ("p edge 3 2\ne 1 2\n", 2, "header declares 2 edges, found 1"),
    ("p edge 3 x\n", 1, "expected an integer"),
    ("e 1 2\n", 1, "malformed header"),
    ("p edge 3 1\nx 1 2\n", 2, "malformed edge line"),
])
def test_dimacs_errors_carry_line_numbers(text, line_no, reason):
    with pytest.raises(GraphFormatError, match=reason) as info:
        graph_from_text(text)
    assert info.value.line_no == line_no
    assert str(info.value).startswith(f"line {line_no}:")


def test_empty_input_is_a_parse_error():
    with pytest.raises(GraphFormatError, match="empty input"):
        graph_from_text("")
    with pytest.raises(GraphFormatError, match="empty input"):
        graph_from_text("\n\n", 'edge-list')


def test_unknown_format_is_rejected():
    with pytest.raises(GraphFormatError, match="unknown graph format"):
        graph_from_text("1 0\n", 'graphml')


def test_serialize_graph_in_both_formats():
    g = Graph(3, [(0, 1), (1, 2)])
    assert serialize_graph(g, 'edge-list') == "3 2\n0 1\n1 2\n"
    assert serialize_graph(g, 'dimacs') == "p edge 3 2\ne 1 2\ne 2 3\n"
    assert graph_from_text(serialize_graph(g, 'dimacs')).edges == g.edges


@pytest.mark.parametrize('fmt', ['dimacs', 'edge-list'])
@pytest.mark.parametrize('name', sorted(FIXTURES))
def test_fixtures_read_back_unchanged(name, fmt):
    fixture = FIXTURES[name]()
    g = fixture.graph
    text = serialize_graph(g, fmt)
    h = graph_from_text(text, fmt)
    assert (h.n, h.m) == (g.n, g.m)
    assert h.edges == g.edges
    assert serialize_graph(h, fmt) == text
    assert parse_matching(h, serialize_matching(fixture.matching)).edges() == fixture.matching.edges()


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError, match="self-loop"):
        Graph(2, [(1, 1)])
    with pytest.raises(ValueError, match="duplicate"):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError, match="outside"):
        Graph(2, [(0, 2)])


def test_matching_output_format():
    m = Matching.from_pairs(4, [(3, 2), (0, 1)])
    assert m.size == 2
    assert m.edges() == [(0, 1), (2, 3)]
    assert serialize_matching(m) == "2\n0 1\n2 3\n"
    assert serialize_matching(Matching.empty(3)) == "0\n"


def test_parse_matching_reads_output_back():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    m = parse_matching(g, "2\n0 1\n2 3\n")
    assert m.partner == (1, 0, 3, 2)


@pytest.mark.parametrize('text, error, reason', [
    ("1\n0 2\n", InvalidMatchingError, "not an edge"),
    ("2\n0 1\n1 2\n", InvalidMatchingError, "matched twice"),
    ("2\n0 1\n", GraphFormatError, "declares 2 pairs"),
    ("", GraphFormatError, "empty matching"),
    ("1\n0 9\n", GraphFormatError, "out of range"),
])
def test_parse_matching_rejects_bad_input(text, error, reason):
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(error, match=reason):
        parse_matching(g, text)


def test_validate_matching_reports_first_violation():
    g = Graph(3, [(0, 1), (1, 2)])
    assert validate_matching(g, Matching([1, 0, None])) is None
    assert validate_matching(g, Matching([1, None, None])).kind == 'symmetry'
    assert validate_matching(g, Matching([2, None, 0])).kind == 'matched pair is not an edge'
    assert validate_matching(g, Matching([None, None])).kind == 'size mismatch'


def test_ensure_matching_defaults_to_empty():
    g = Graph(3, [(0, 1)])
    assert ensure_matching(g, None) == Matching.empty(3)
    with pytest.raises(InvalidMatchingError, match="symmetry"):
        ensure_matching(g, Matching([1, None, None]))


def test_augment_flips_along_the_path(path_graph):
    g, m = path_graph.graph, path_graph.matching
    vertices = path_graph.vertices('f1', 'a', 'b', 'f2')
    p = AlternatingPath.from_vertices(g, m, vertices)
    assert p.matched == (False, True, False)
    assert len(p) == 3
    bigger = augment(m, p)
    assert bigger.size == 2
    assert bigger.mate(path_graph['f1']) == path_graph['a']
    assert bigger.mate(path_graph['b']) == path_graph['f2']
    # input matching is left as it was
    assert m.size == 1


def test_augmenting_problem_explains_rejections(path_graph):
    g, m = path_graph.graph, path_graph.matching
    f1, a, b, f2 = path_graph.vertices('f1', 'a', 'b', 'f2')
    assert augmenting_problem(g, m.partner, [f1, a, b, f2]) is None
    assert "endpoints must be free" in augmenting_problem(g, m.partner, [a, b])
    assert "odd length" in augmenting_problem(Graph(3, [(0, 1), (1, 2)]), (None, None, None), [0, 1, 2])
    assert "not an edge" in augmenting_problem(g, m.partner, [f1, b, a, f2])
    with pytest.raises(PathError, match="repeats"):
        AlternatingPath.from_vertices(g, m, [f1, a, f1])
