import math
import random
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from inducedforest.bounds import PotentialKind, potential_sum
from inducedforest.constructive import construct_triangle_free_forest, replay_trace
from inducedforest.errors import NotApplicable, TraceInvalid
from inducedforest.generators import bipartite_random, complete, complete_bipartite, cycle, star, triangle_free_rejection
from inducedforest.graph import VertexSet, induces_forest


def floor_of(g):
    return math.ceil(potential_sum(g, PotentialKind.TRIANGLE_FREE))


def test_star_keeps_everything():
    g = star(9)
    cert, trace = construct_triangle_free_forest(g)
    assert len(cert.vertices) == 10 == floor_of(g)
    assert {s.step_kind for s in trace} == {"leaf_strip"}
    assert potential_sum(g, PotentialKind.TRIANGLE_FREE) == 9 + Fraction(3, 11)


def test_k66_uses_case2():
    g = complete_bipartite(6, 6)
    cert, trace = construct_triangle_free_forest(g)
    assert len(cert.vertices) == 7 and floor_of(g) == 5
    first = trace[0]
    assert first.step_kind == "case2" and first.t == 6 and len(first.deleted) == 5
    rep = replay_trace(g, trace)
    assert rep.min_gain["case2"] >= Fraction(5, 56)


def test_c5_is_a_base_case():
    cert, trace = construct_triangle_free_forest(cycle(5))
    assert [s.step_kind for s in trace] == ["base"]
    assert len(cert.vertices) == 4


def test_rejects_triangles():
    with pytest.raises(NotApplicable):
        construct_triangle_free_forest(complete(3))


def corpus(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(5, 61))
        p = float(rng.uniform(0.05, 0.5))
        out.append(bipartite_random(n, p, rng) if i % 3 == 0 else triangle_free_rejection(n, p, rng))
    return out


def test_random_corpus_and_case_coverage():
    kinds = set()
    for g in corpus(60, 5):
        cert, trace = construct_triangle_free_forest(g)
        assert induces_forest(g, cert.vertices)
        assert len(cert.vertices) >= floor_of(g)
        rep = replay_trace(g, trace)
        kinds |= set(rep.by_kind)
        assert all(v >= 0 for k, v in rep.min_gain.items() if k in ("case1", "case2", "case3"))
    assert {"leaf_strip", "base", "case1", "case2", "case3"} <= kinds


def test_tie_break_seeds():
    for g in corpus(10, 8):
        sizes = []
        for seed in range(5):
            cert, trace = construct_triangle_free_forest(g, tie_seed=seed)
            replay_trace(g, trace)
            sizes.append(len(cert.vertices))
        assert min(sizes) >= floor_of(g)


def pivot_trace():
    for g in corpus(40, 2):
        _, trace = construct_triangle_free_forest(g)
        for i, st in enumerate(trace):
            if st.step_kind in ("case2", "case3"):
                return g, trace, i
    raise AssertionError("corpus has no pivot step")


def test_corrupted_t():
    g, trace, i = pivot_trace()
    bad = list(trace)
    bad[i] = replace(trace[i], t=trace[i].t + 1)
    with pytest.raises(TraceInvalid) as info:
        replay_trace(g, bad)
    assert info.value.step_index == i


@pytest.mark.parametrize("field", ["deleted", "potential_after", "ni_map", "pivot"])
def test_other_corruptions(field):
    g, trace, i = pivot_trace()
    st = trace[i]
    if field == "deleted":
        changed = VertexSet(g.n, st.deleted.members & (st.deleted.members - 1))
    elif field == "potential_after":
        changed = st.potential_after + Fraction(1, 7)
    elif field == "ni_map":
        key = next(iter(st.ni_map))
        changed = {**st.ni_map, key: st.ni_map[key] + 1}
    else:
        changed = (st.pivot + 1) % g.n
    bad = list(trace)
    bad[i] = replace(st, **{field: changed})
    with pytest.raises(TraceInvalid):
        replay_trace(g, bad)


def test_leaf_strip_accounting():
    g = star(4)
    _, trace = construct_triangle_free_forest(g)
    for st in trace:
        assert st.potential_after >= st.potential_before - 1


def test_trace_json():
    _, trace = construct_triangle_free_forest(complete_bipartite(6, 6))
    d = trace[0].to_dict()
    assert d["step_kind"] == "case2" and d["t"] == 6
    assert isinstance(d["potential_before"], str)


def test_exhaustive_small_triangle_free():
    from inducedforest.generators import exhaustive_small

    for n in range(1, 8):
        for g in exhaustive_small(n, triangle_free=True):
            cert, trace = construct_triangle_free_forest(g)
            replay_trace(g, trace)
            assert len(cert.vertices) >= floor_of(g)
