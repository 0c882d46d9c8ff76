import random

import networkx as nx
import pytest

from conftest import random_graph
from inducedforest.errors import MalformedEdgeList, MalformedGraph6
from inducedforest.generators import complete, cycle, exhaustive_small
from inducedforest.graph import Graph, graph_from_edges
from inducedforest.graph_io import (
    parse_documents,
    parse_edgelist,
    parse_graph6,
    read_graphs,
    serialize_edgelist,
    serialize_graph6,
    write_graphs,
)
from oracles import to_nx


def nx_graph6(g: Graph) -> bytes:
    return nx.to_graph6_bytes(to_nx(g), header=False).rstrip(b"\n")


def test_small_goldens():
    assert serialize_graph6(Graph(1, [0])) == b"@"
    assert parse_graph6(b"Bw") == complete(3)
    # "A_" carries the single bit of x(0,1): it is K2, not the empty graph
    assert parse_graph6(b"A_") == complete(2)
    assert parse_graph6(b"A?") == Graph(2, [0, 0])
    c5 = serialize_graph6(cycle(5))
    assert len(c5) == 3 and parse_graph6(c5) == cycle(5)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 30, 62, 63, 64, 100, 200])
def test_matches_networkx_encoder(n):
    rng = random.Random(n)
    g = random_graph(rng, n, 0.3)
    assert serialize_graph6(g) == nx_graph6(g)
    assert parse_graph6(nx_graph6(g)) == g


@pytest.mark.parametrize("bad", [b"", b"\n", b"B", b"Bww", b"B\x20", b"Bx", b"~??"])
def test_malformed_graph6(bad):
    with pytest.raises(MalformedGraph6):
        parse_graph6(bad)


def test_graph6_bytes_printable():
    rng = random.Random(3)
    for _ in range(200):
        g = random_graph(rng, rng.randint(0, 70), rng.random())
        assert all(63 <= b <= 126 for b in serialize_graph6(g))


def test_round_trip_exhaustive_classes():
    for n in range(7):
        for g in exhaustive_small(n):
            assert parse_graph6(serialize_graph6(g)) == g
            assert parse_edgelist(serialize_edgelist(g)) == g


def test_edgelist_examples():
    assert parse_edgelist("3 3\n0 1\n1 2\n0 2") == complete(3)
    with pytest.raises(MalformedEdgeList):
        parse_edgelist("2 1\n0 0")
    g = parse_edgelist("4 2\n0 1\n2 3\n# end")
    assert g == graph_from_edges(4, [(0, 1), (2, 3)])


@pytest.mark.parametrize("text", ["", "3 2\n0 1", "3 2\n0 1\n1 0", "3 1\n0 5", "x y", "3 1\n0 1 2"])
def test_malformed_edgelist(text):
    with pytest.raises(MalformedEdgeList):
        parse_edgelist(text)


def test_autodetect_and_files(tmp_path):
    g = cycle(6)
    docs = parse_documents(serialize_edgelist(g))
    assert docs[0].source_format == "edgelist" and docs[0].graph == g
    multi = serialize_graph6(g) + b"\n" + serialize_graph6(complete(4)) + b"\n"
    docs = parse_documents(multi, label="x")
    assert [d.source_format for d in docs] == ["graph6", "graph6"]
    assert docs[1].graph == complete(4)
    write_graphs(tmp_path / "a.g6", [g, complete(4)])
    assert [d.graph for d in read_graphs(tmp_path / "a.g6")] == [g, complete(4)]
    write_graphs(tmp_path / "b.txt", [g])
    (doc,) = read_graphs(tmp_path / "b.txt")
    assert doc.graph == g and doc.label == "b"
    assert doc.serialize() == serialize_edgelist(g).encode()


def test_graph6_header_accepted():
    assert parse_graph6(b">>graph6<<Bw\n") == complete(3)
