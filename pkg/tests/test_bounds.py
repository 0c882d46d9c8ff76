import random
from fractions import Fraction

import networkx as nx
import pytest

from conftest import random_graph
from inducedforest.bounds import (
    PotentialKind,
    case2_gain,
    case3_sides,
    check_case3_identity,
    check_lemma_21,
    check_lemma_22,
    check_potential_shape,
    closed_form_bounds,
    f_tf,
    jensen_floor,
    kq_values,
    potential_sum,
    verify_case1_inequality,
)
from inducedforest.errors import NotApplicable
from inducedforest.generators import complete, complete_bipartite, cycle, path, petersen, star
from inducedforest.graph import Graph, graph_from_edges
from oracles import to_nx

GEN = PotentialKind.GENERAL
TF = PotentialKind.TRIANGLE_FREE


def test_potential_sum_examples():
    assert potential_sum(cycle(5), TF) == Fraction(15, 4)
    assert potential_sum(star(5), GEN) == Fraction(16, 3)
    assert potential_sum(Graph(1, [0]), GEN) == potential_sum(Graph(1, [0]), TF) == 1


@pytest.mark.parametrize("kind", [GEN, TF])
def test_potential_monotone_and_convex(kind):
    assert kind(0) == kind(1) == 1
    for d in range(0, 1000):
        assert kind(d + 1) <= kind(d)
    for d in range(3, 1001):
        assert kind(d - 1) - kind(d) <= kind(d - 2) - kind(d - 1)


def test_potential_shape_checker():
    assert check_potential_shape(1000) == []
    with pytest.raises(ValueError):
        check_potential_shape(2)


def test_swap_inequality():
    for r in range(5, 1001):
        assert Fraction(1, 4) > Fraction(3, r) - Fraction(3, r + 2)


def test_case1_inequality():
    assert all(verify_case1_inequality(d) for d in range(5, 1001))


def test_clique_report():
    rep = closed_form_bounds(complete(7))
    assert rep.get("clique_degree").value == 2
    assert rep.get("clique_degree").applicable
    assert not rep.get("k4_free").applicable
    assert rep.get("kq_free_q8").tight_choice
    assert [e.id for e in rep.entries if e.id.startswith("kq")] == ["kq_free_q8", "kq_free_q9", "kq_free_q10"]


def test_petersen_report():
    rep = closed_form_bounds(petersen())
    assert rep.get("amt_triangle_free").value == Fraction(25, 4)
    assert rep.get("shi_xu").value == Fraction(120, 19)
    assert rep.get("tf_avg_degree").value == 6
    assert rep.best_applicable == ("amt_triangle_free", 7)


def test_c5_report():
    rep = closed_form_bounds(cycle(5))
    e = rep.get("tf_avg4_15_29")
    assert e.applicable and e.value == Fraction(75, 29)


def independent_values(g: Graph) -> dict:
    """The formulas again, from networkx quantities."""
    h = to_nx(g)
    n, m = h.number_of_nodes(), h.number_of_edges()
    degs = [d for _, d in h.degree()]
    dmax = max(degs)
    d = Fraction(2 * m, n)
    omega = max(len(c) for c in nx.find_cliques(h))
    comps = [h.subgraph(c) for c in nx.connected_components(h)]
    out = {
        "aks_potential": sum(min(Fraction(1), Fraction(2, x + 1)) for x in degs),
        "aks_avg_degree": 2 * n / (d + 1),
        "aks_max_degree": Fraction(2 * n, dmax + 1),
        "clique_degree": Fraction(6 * n, 2 * dmax + omega + 2),
        "k4_free": Fraction(6 * n, 2 * dmax + 5),
        "a3_max_degree": Fraction(2 * n, dmax + 1),
        "amt_triangle_free": n - Fraction(m, 4),
        "shi_xu": sum(Fraction(20 * c.number_of_nodes() - 5 * c.number_of_edges() - 5, 19) for c in comps),
        "tf_potential": sum(min(Fraction(1), Fraction(3, x + 2)) for x in degs),
        "tf_avg_degree": 3 * n / (d + 2),
        "tf_avg4_15_29": Fraction(15 * n, 29),
        "tf_avg4_half": Fraction(n + 1, 2),
    }
    for q in range(max(5, omega + 1), max(5, omega + 3) + 1):
        out[f"kq_free_q{q}"] = Fraction(6 * n, 2 * dmax + q + 1)
    return out, omega, d, dmax


def test_values_against_independent_evaluation():
    rng = random.Random(8)
    for _ in range(200):
        g = random_graph(rng, rng.randint(2, 14), rng.uniform(0.15, 0.7))
        if g.m == 0:
            continue
        expect, omega, d, dmax = independent_values(g)
        rep = closed_form_bounds(g)
        for bid, val in expect.items():
            assert rep.get(bid).value == val, bid
        tf = omega <= 2
        assert rep.get("amt_triangle_free").applicable == tf
        assert rep.get("tf_avg4_15_29").applicable == (tf and d <= 4)
        assert rep.get("k4_free").applicable == (omega <= 3)
        assert rep.get("hopkins_a1").applicable == (dmax % 2 == 1)
        assert rep.get("tf_avg_degree").applicable == (tf and d >= 2)


def test_kq_values_range():
    assert kq_values(2) == [5]
    assert kq_values(4) == [5, 6, 7]
    assert kq_values(6) == [7, 8, 9]


def test_report_json_shape():
    d = closed_form_bounds(cycle(5), "c5").to_dict()
    assert d["graph_label"] == "c5" and d["n"] == 5
    assert {"id", "num", "den", "applicable", "target"} <= set(d["entries"][0])
    targets = {e["target"] for e in d["entries"]}
    assert targets == {"a", "a1", "a3", "a4"}


def test_lemma_21():
    assert check_lemma_21((5, 60)) == []
    delta, d, q = 5, 2, 2
    assert f_tf(d - q) - f_tf(d) == Fraction(1, 4)
    assert q * (f_tf(delta - 1) - f_tf(delta)) == Fraction(1, 7)
    with pytest.raises(ValueError):
        check_lemma_21((4, 10))


def test_lemma_22():
    assert check_lemma_22((5, 60)) == []
    delta, d, q = 5, 3, 3
    assert f_tf(d - q) - f_tf(d) == Fraction(2, 5)
    assert q * (f_tf(delta - 2) - f_tf(delta - 1)) == Fraction(3, 10)


def test_case3_identity():
    assert check_case3_identity((5, 40)) == []
    assert case3_sides(5, 1) == (Fraction(3, 70), Fraction(3, 70))
    with pytest.raises(ValueError):
        case3_sides(5, 5)


def test_case2_gain():
    assert case2_gain(6) == Fraction(5, 56)
    assert case2_gain(5) == 0
    assert all(case2_gain(d) >= 0 for d in range(5, 1000))


def test_jensen_floor():
    assert jensen_floor(cycle(5)) == Fraction(15, 4)
    assert jensen_floor(complete_bipartite(3, 3)) == Fraction(18, 5)
    assert potential_sum(complete_bipartite(3, 3), TF) == Fraction(18, 5)
    with pytest.raises(NotApplicable):
        jensen_floor(path(4))
    with pytest.raises(NotApplicable):
        jensen_floor(complete(3))
    rng = random.Random(4)
    for _ in range(200):
        g = random_graph(rng, rng.randint(3, 20), rng.uniform(0.2, 0.6))
        if g.stats().triangle_free and g.stats().avg_degree >= 2:
            jensen_floor(g)


def test_shi_xu_is_per_component():
    two = graph_from_edges(10, [(i, (i + 1) % 5) for i in range(5)] + [(5 + i, 5 + (i + 1) % 5) for i in range(5)])
    assert closed_form_bounds(two).get("shi_xu").value == 2 * Fraction(100 - 25 - 5, 19)
