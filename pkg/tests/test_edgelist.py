import pytest
from hypothesis import given

from trace_lab.edgelist import format_edge_list, parse_edge_list, read_edge_list, write_edge_list
from trace_lab.errors import ParseError
from trace_lab.hypergraph import Hypergraph

from conftest import hypergraphs


def test_format_has_header_and_trailing_newline():
    # edges come out in colex order
    F = Hypergraph(4, [[2], [], [0, 1]])
    assert format_edge_list(F) == "4 3\n\n0 1\n2\n"


def test_empty_line_is_empty_edge():
    F = parse_edge_list("3 2\n\n0 2\n")
    assert F.edge_lists() == [[], [0, 2]]


@given(hypergraphs(max_n=9))
def test_round_trip(F):
    assert parse_edge_list(format_edge_list(F)) == F


def test_file_round_trip(tmp_path):
    F = Hypergraph(5, [[0, 4], [1, 2, 3]])
    path = tmp_path / "f.txt"
    write_edge_list(F, path)
    assert path.read_bytes() == b"5 2\n1 2 3\n0 4\n"
    assert read_edge_list(path) == F


def test_labels_map_in_order_of_appearance():
    F = parse_edge_list("3 2\nb a\nc\n", labels=True)
    assert F.edge_lists() == [[0, 1], [2]]


@pytest.mark.parametrize("text, line", [
    ("3 2\n0 1\n1 0\n", 3),
    ("3 1\n0 3\n", 2),
    ("3 2\n0 1\n0 1\n", 3),
    ("3 1\nx\n", 2),
    ("3\n", 1),
    ("a b\n", 1),
    ("3 3\n0\n1\n", 4),
    ("3 1\n0\n1\n", 3),
])
def test_malformed_input_reports_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_too_many_labels():
    with pytest.raises(ParseError):
        parse_edge_list("2 2\na b\nc\n", labels=True)


def test_empty_last_edge_needs_its_own_line():
    assert parse_edge_list("2 2\n0\n\n").edge_lists() == [[], [0]]
    assert parse_edge_list("2 1\n0").edge_lists() == [[0]]
