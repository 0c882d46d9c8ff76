import pytest

from inducedforest.errors import GenerationFailed
from inducedforest.generators import (
    GeneratorSpec,
    all_labeled,
    canonical_code,
    exhaustive_small,
    generate,
    named,
)
from inducedforest.graph import has_clique, is_triangle_free
from inducedforest.graph_io import serialize_graph6


def test_random_regular_deterministic():
    spec = GeneratorSpec("random_regular", 12, 7, 3, {"d": 4})
    a = [serialize_graph6(g) for g in generate(spec)]
    b = [serialize_graph6(g) for g in generate(spec)]
    assert a == b
    assert all(set(g.degree) == {4} for g in generate(spec))


def test_triangle_free_rejection():
    (g,) = generate(GeneratorSpec("triangle_free_rejection", 20, 1, 1, {"p": 0.3}))
    assert is_triangle_free(g) and g.n == 20


def test_families_satisfy_predicates():
    assert all(is_triangle_free(g) for g in generate(GeneratorSpec("bipartite_random", 16, 2, 5, {"p": 0.5})))
    gs = generate(GeneratorSpec("kq_free_greedy", 14, 3, 5, {"q": 5, "target_m": 30}))
    assert all(not has_clique(g, 5) and g.m == 30 for g in gs)
    gs = generate(GeneratorSpec("random_regular", 10, 3, 5, {"d": 4, "triangle_free": "true"}))
    assert all(is_triangle_free(g) and set(g.degree) == {4} for g in gs)
    gs = generate(GeneratorSpec("gnp", 9, 4, 3, {"p": 0.5}))
    assert len(gs) == 3 and all(g.n == 9 for g in gs)


def test_named_catalog():
    g = named("k55_minus_pm")
    assert g.n == 10 and set(g.degree) == {4} and is_triangle_free(g)
    p = named("petersen")
    assert p.m == 15 and set(p.degree) == {3}
    assert named("complete_bipartite:2,3").m == 6
    assert named("complete:6").m == 15
    assert generate(GeneratorSpec("named", params={"id": "cycle:7"}))[0].m == 7
    with pytest.raises(ValueError):
        named("heawood")


def test_impossible_parameters():
    with pytest.raises(GenerationFailed):
        generate(GeneratorSpec("random_regular", 5, 0, 1, {"d": 3}))
    with pytest.raises(GenerationFailed):
        generate(GeneratorSpec("kq_free_greedy", 5, 0, 1, {"q": 3, "target_m": 10}))
    with pytest.raises(ValueError):
        GeneratorSpec("lattice")


def test_exhaustive_counts():
    # numbers of graphs / triangle-free graphs on n unlabelled vertices
    assert [len(exhaustive_small(n)) for n in range(7)] == [1, 1, 2, 4, 11, 34, 156]
    assert [len(exhaustive_small(n, True)) for n in range(8)] == [1, 1, 2, 3, 7, 14, 38, 107]


def test_canonical_code_invariant_under_relabelling():
    import random

    rng = random.Random(3)
    for g in exhaustive_small(5):
        perm = list(range(5))
        rng.shuffle(perm)
        assert canonical_code(g.relabel(perm)) == canonical_code(g)


def test_all_labeled_and_dedup_agree():
    codes = {canonical_code(g) for g in all_labeled(5)}
    assert len(codes) == 34
    assert sum(1 for _ in all_labeled(4)) == 64
