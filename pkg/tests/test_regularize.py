import math
import random

import networkx as nx
import numpy as np
import pytest

from conftest import random_graph
from inducedforest.errors import InvalidSet, NothingToDo
from inducedforest.generators import cycle, gnp, path, star
from inducedforest.graph import Graph, VertexSet, graph_from_edges, induces_forest
from inducedforest.pipeline import check_regularized, clique_degree_pipeline
from inducedforest.regularize import extract_best_copy, regularize
from oracles import to_nx


def test_p3_becomes_c6():
    reg = regularize(path(3))
    h = to_nx(reg.g_prime)
    assert (reg.copies, reg.rounds, h.number_of_nodes()) == (2, 1, 6)
    assert set(dict(h.degree()).values()) == {2}
    assert nx.is_connected(h) and nx.girth(h) == 6


def test_regular_input_is_identity():
    reg = regularize(cycle(5))
    assert reg.copies == 1 and reg.rounds == 0 and reg.g_prime == cycle(5)
    assert extract_best_copy(reg, VertexSet.of(5, [0, 1, 2, 3])) == (0, VertexSet.of(5, [0, 1, 2, 3]))


def test_star_k13():
    g = star(3)
    reg = regularize(g)
    assert reg.copies == 4 and set(reg.g_prime.degree) == {3}
    assert check_regularized(g, reg).passed


def test_edgeless_and_cap():
    with pytest.raises(NothingToDo):
        regularize(Graph(3, [0, 0, 0]))
    with pytest.raises(ValueError):
        regularize(star(8), max_vertices=100)


def test_invariants_random():
    rng = random.Random(6)
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 12), rng.uniform(0.2, 0.7))
        if g.m == 0 or max(g.degree) - min(g.degree) > 4:
            continue
        reg = regularize(g)
        inv = check_regularized(g, reg)
        assert inv.passed, inv
        assert reg.copies == 2 ** (max(g.degree) - min(g.degree))
        for v in range(reg.g_prime.n):
            c, base = reg.copy_map(v)
            assert v == c * g.n + base


def test_extract_from_c6():
    reg = regularize(path(3))
    five = VertexSet.of(6, [0, 1, 2, 3, 4])
    copy, proj = extract_best_copy(reg, five)
    assert copy == 0 and len(proj) >= math.ceil(5 / 2)
    assert proj == VertexSet.full(3)


def test_pigeonhole_four_copies():
    g = star(3)
    reg = regularize(g)
    rng = random.Random(1)
    for _ in range(50):
        members = rng.sample(range(reg.g_prime.n), 8)
        s = VertexSet.of(reg.g_prime.n, members)
        if not induces_forest(reg.g_prime, s):
            continue
        _, proj = extract_best_copy(reg, s)
        assert len(proj) >= 2 and induces_forest(g, proj)


def test_extract_rejects_infeasible():
    reg = regularize(path(3))
    with pytest.raises(InvalidSet):
        extract_best_copy(reg, VertexSet.full(6))


def test_pipeline_small():
    rng = np.random.default_rng(2)
    done = 0
    while done < 12:
        n = int(rng.integers(5, 16))
        g = gnp(n, float(rng.uniform(0.15, 0.5)), rng)
        if g.m == 0 or len(set(g.degree)) == 1 or max(g.degree) - min(g.degree) > 3:
            continue
        res = clique_degree_pipeline(g)
        assert res.floor_met and induces_forest(g, res.vertices)
        if res.invariants is not None:
            assert res.invariants.passed and res.certificates_passed
        done += 1


def test_pipeline_edgeless():
    with pytest.raises(NothingToDo):
        clique_degree_pipeline(Graph(2, [0, 0]))


def test_pipeline_method_by_clique_number():
    tri = graph_from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert clique_degree_pipeline(tri).method == "K4"
    k5 = graph_from_edges(6, [(u, v) for v in range(5) for u in range(v)] + [(4, 5)])
    assert clique_degree_pipeline(k5).method == "Kq(6)"
    assert clique_degree_pipeline(path(4)).method == "tf"
