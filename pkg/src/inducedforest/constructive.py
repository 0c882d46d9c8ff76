"""Constructive induced forests in triangle-free graphs.

The construction follows the potential argument for
``a(G) >= sum_v min(1, 3/(d(v)+2))``:

* a vertex of degree at most 1 is set aside and later added back;
* when every degree lies in ``[2, 4]`` a base solver must reach
  ``n - m/4`` on each component;
* otherwise a pivot ``v`` of maximum degree ``D`` is chosen with as many
  degree-``D`` neighbours as possible (``t`` of them), and the graph loses
  ``{v}`` (``t = 0``), ``D-1`` of those neighbours (``t = D``), or all ``t``
  of them (``0 < t < D``). The potential never drops.

Every step is logged in a :class:`TfStepTrace`; :func:`replay_trace`
recomputes each one from the input graph alone.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import case2_gain, case3_sides, f_tf, potential_sum, PotentialKind
from .errors import BaseCaseShortfall, Incomplete, NotApplicable, TraceInvalid
from .exact import max_induced_forest
from .graph import (
    ForestCertificate,
    Graph,
    VertexSet,
    certify_forest,
    component_masks,
    edges_within,
    is_forest_mask,
    is_triangle_free,
    iter_bits,
)
from .search import LexVariant, search

LEAF_STRIP, CASE1, CASE2, CASE3, BASE = "leaf_strip", "case1", "case2", "case3", "base"


@dataclass(frozen=True)
class BaseSolverConfig:
    search_restarts: int = 3
    exact_cap: int = 24
    exact_budget: int | None = 500_000


@dataclass(frozen=True)
class TfStepTrace:
    step_kind: str
    pivot: int | None
    t: int | None
    deleted: VertexSet
    shell1: VertexSet
    shell2: VertexSet
    ni_map: dict
    potential_before: Fraction
    potential_after: Fraction
    forest: VertexSet | None = None  # base step only

    def to_dict(self) -> dict:
        return {
            "step_kind": self.step_kind,
            "pivot": self.pivot,
            "t": self.t,
            "deleted": self.deleted.to_list(),
            "shell1": self.shell1.to_list(),
            "shell2": self.shell2.to_list(),
            "ni_map": {str(k): v for k, v in sorted(self.ni_map.items())},
            "potential_before": str(self.potential_before),
            "potential_after": str(self.potential_after),
            "forest": self.forest.to_list() if self.forest is not None else None,
        }


def _degrees(adj, alive: int) -> dict[int, int]:
    return {v: (adj[v] & alive).bit_count() for v in iter_bits(alive)}


def _potential(adj, alive: int) -> Fraction:
    return sum((f_tf((adj[v] & alive).bit_count()) for v in iter_bits(alive)), Fraction(0))


def _shell2(adj, alive: int, pivot: int) -> int:
    s1 = adj[pivot] & alive
    out = 0
    for u in iter_bits(s1):
        out |= adj[u]
    return out & alive & ~s1 & ~(1 << pivot)


def _pivot_score(adj, alive: int, deg: dict, v: int, delta: int) -> int:
    return sum(1 for u in iter_bits(adj[v] & alive) if deg[u] == delta)


def _solve_component(g: Graph, comp: int, cfg: BaseSolverConfig) -> int:
    sub, keep = g.induced(iter_bits(comp))
    target = math.ceil(sub.n - Fraction(sub.m, 4))
    best = 0
    k4 = LexVariant.k4()
    for attempt in range(cfg.search_restarts + 1):
        st = search(sub, k4, order_seed=None if attempt == 0 else attempt, check_applicable=False)
        if len(st.s) > best.bit_count():
            best = st.s.members
        if best.bit_count() >= target:
            break
    if best.bit_count() < target and sub.n <= cfg.exact_cap:
        try:
            res = max_induced_forest(sub, cfg.exact_budget, VertexSet(sub.n, best))
            best = res.witness.members
        except Incomplete as exc:
            best = max(best, exc.result.witness.members, key=int.bit_count)
    if best.bit_count() < target:
        raise BaseCaseShortfall(
            f"base component with n={sub.n}, m={sub.m} reached {best.bit_count()} < {target}",
            {"n": sub.n, "m": sub.m, "target": target, "reached": best.bit_count(), "vertices": keep},
        )
    out = 0
    for i in iter_bits(best):
        out |= 1 << keep[i]
    return out


def construct_triangle_free_forest(
    g: Graph, base_cfg: BaseSolverConfig | None = None, tie_seed: int | None = None
) -> tuple[ForestCertificate, list[TfStepTrace]]:
    """Induced forest of size at least ``ceil(sum_v min(1, 3/(d(v)+2)))``.

    ``tie_seed`` randomises the choice among equally good pivots.
    """
    if not is_triangle_free(g):
        raise NotApplicable("graph contains a triangle")
    cfg = base_cfg or BaseSolverConfig()
    rng = random.Random(tie_seed) if tie_seed is not None else None
    adj = g.adj
    n = g.n
    alive = g.full_mask
    kept = 0
    trace: list[TfStepTrace] = []
    empty = VertexSet(n, 0)
    pot = _potential(adj, alive)
    while alive:
        deg = _degrees(adj, alive)
        low = next((v for v in iter_bits(alive) if deg[v] <= 1), None)
        if low is not None:
            alive &= ~(1 << low)
            kept |= 1 << low
            after = _potential(adj, alive)
            trace.append(TfStepTrace(LEAF_STRIP, low, None, VertexSet(n, 1 << low), empty, empty, {}, pot, after))
            pot = after
            continue
        delta = max(deg.values())
        if delta <= 4:
            forest = 0
            for comp in component_masks(g, alive):
                forest |= _solve_component(g, comp, cfg)
            trace.append(TfStepTrace(BASE, None, None, empty, empty, empty, {}, pot, Fraction(forest.bit_count()), VertexSet(n, forest)))
            kept |= forest
            break
        tops = [v for v in iter_bits(alive) if deg[v] == delta]
        scores = {v: _pivot_score(adj, alive, deg, v, delta) for v in tops}
        t = max(scores.values())
        tied = [v for v in tops if scores[v] == t]
        pivot = rng.choice(tied) if rng is not None else tied[0]
        s1 = adj[pivot] & alive
        s2 = _shell2(adj, alive, pivot)
        big = [u for u in iter_bits(s1) if deg[u] == delta]
        if t == 0:
            kind, deleted = CASE1, 1 << pivot
        elif t == delta:
            kind, deleted = CASE2, sum(1 << u for u in big[: delta - 1])
        else:
            kind, deleted = CASE3, sum(1 << u for u in big)
        ni = {} if kind == CASE1 else {i: (adj[i] & deleted).bit_count() for i in iter_bits(s2)}
        alive &= ~deleted
        after = _potential(adj, alive)
        trace.append(TfStepTrace(kind, pivot, t, VertexSet(n, deleted), VertexSet(n, s1), VertexSet(n, s2), ni, pot, after))
        pot = after
    cert = certify_forest(g, VertexSet(n, kept))
    need = math.ceil(potential_sum(g, PotentialKind.TRIANGLE_FREE))
    if cert.size < need:
        raise AssertionError(f"forest of size {cert.size} below guaranteed {need}")
    return cert, trace


@dataclass
class ReplayReport:
    steps: int
    by_kind: dict = field(default_factory=dict)
    min_gain: dict = field(default_factory=dict)  # kind -> smallest Q - S seen

    def to_dict(self) -> dict:
        return {
            "steps": self.steps,
            "by_kind": dict(self.by_kind),
            "min_gain": {k: str(v) for k, v in self.min_gain.items()},
        }


def _case1_floor(delta: int) -> Fraction:
    return -Fraction(3, delta + 2) + delta * (Fraction(3, delta) - Fraction(3, delta + 1))


def replay_trace(g: Graph, trace: list[TfStepTrace]) -> ReplayReport:
    """Recompute every step from ``g``; any disagreement raises :class:`TraceInvalid`."""
    adj = g.adj
    alive = g.full_mask
    report = ReplayReport(len(trace))
    for idx, st in enumerate(trace):

        def fail(msg):
            raise TraceInvalid(msg, idx)

        deg = _degrees(adj, alive)
        before = _potential(adj, alive)
        if st.potential_before != before:
            fail(f"potential before is {before}, trace says {st.potential_before}")
        has_low = any(d <= 1 for d in deg.values())
        delta = max(deg.values()) if deg else 0
        if has_low:
            expected = LEAF_STRIP
        elif delta <= 4:
            expected = BASE
        else:
            expected = None  # one of the three cases, decided by t
        if expected is not None and st.step_kind != expected:
            fail(f"expected a {expected} step, found {st.step_kind}")
        report.by_kind[st.step_kind] = report.by_kind.get(st.step_kind, 0) + 1

        if st.step_kind == LEAF_STRIP:
            v = st.pivot
            if v is None or not alive >> v & 1 or deg[v] > 1:
                fail("stripped vertex is not a live vertex of degree at most 1")
            if st.deleted.members != 1 << v:
                fail("leaf step must delete exactly its vertex")
            alive &= ~(1 << v)
            after = _potential(adj, alive)
            if after != st.potential_after or after < before - 1:
                fail("leaf step potential mismatch")
            continue

        if st.step_kind == BASE:
            if idx != len(trace) - 1:
                fail("base step must be the last one")
            forest = st.forest.members if st.forest is not None else 0
            if forest & ~alive or not is_forest_mask(g, forest):
                fail("base forest is not an induced forest of the remaining graph")
            for comp in component_masks(g, alive):
                part = (forest & comp).bit_count()
                if part < math.ceil(comp.bit_count() - Fraction(edges_within(g, comp), 4)):
                    fail("base forest misses n - m/4 on a component")
            if forest.bit_count() < math.ceil(before):
                fail("base forest below the potential")
            alive = 0
            continue

        if st.step_kind not in (CASE1, CASE2, CASE3):
            fail(f"unknown step kind {st.step_kind!r}")
        v = st.pivot
        if v is None or not alive >> v & 1 or deg[v] != delta:
            fail("pivot does not have maximum degree")
        score = _pivot_score(adj, alive, deg, v, delta)
        best = max(_pivot_score(adj, alive, deg, u, delta) for u in deg if deg[u] == delta)
        if score != best:
            fail("pivot does not maximise its number of maximum-degree neighbours")
        t = score
        if st.t != t:
            fail(f"t is {t}, trace says {st.t}")
        kind = CASE1 if t == 0 else CASE2 if t == delta else CASE3
        if st.step_kind != kind:
            fail(f"t={t} with maximum degree {delta} is {kind}, trace says {st.step_kind}")
        s1 = adj[v] & alive
        s2 = _shell2(adj, alive, v)
        if st.shell1.members != s1 or st.shell2.members != s2:
            fail("shells do not match the graph")
        big = sum(1 << u for u in iter_bits(s1) if deg[u] == delta)
        deleted = st.deleted.members
        if kind == CASE1 and deleted != 1 << v:
            fail("case 1 deletes exactly the pivot")
        if kind == CASE2 and (deleted & ~big or deleted.bit_count() != delta - 1):
            fail("case 2 deletes D-1 maximum-degree neighbours")
        if kind == CASE3 and deleted != big:
            fail("case 3 deletes every maximum-degree neighbour")
        new_alive = alive & ~deleted
        after = _potential(adj, new_alive)
        if after != st.potential_after:
            fail(f"potential after is {after}, trace says {st.potential_after}")
        gain = after - before
        if gain < 0:
            fail("potential decreased")
        f = f_tf
        if kind == CASE1:
            if st.ni_map:
                fail("case 1 carries no n_i")
            if gain < _case1_floor(delta):
                fail("case 1 gain below its closed form")
        else:
            ni = {i: (adj[i] & deleted).bit_count() for i in iter_bits(s2)}
            if ni != st.ni_map:
                fail("n_i values do not match the graph")
            k = deleted.bit_count()
            expect_sum = (delta - 1) ** 2 if kind == CASE2 else t * (delta - 1)
            if sum(ni.values()) != expect_sum:
                fail(f"sum of n_i over the second shell is {sum(ni.values())}, expected {expect_sum}")
            pivot_deg = delta - k
            exact = f(pivot_deg) - f(delta) - k * f(delta) + sum(f(deg[i] - c) - f(deg[i]) for i, c in ni.items())
            if exact != gain:
                fail("potential change does not split into pivot, deleted and second-shell parts")
            step_a = f(delta - 1) - f(delta)
            step_b = f(delta - 2) - f(delta - 1)
            in_a = 0
            for i, c in ni.items():
                if f(deg[i] - c) - f(deg[i]) < c * (step_a if deg[i] == delta else step_b):
                    fail(f"second-shell vertex {i} violates the per-vertex inequality")
                if deg[i] == delta:
                    in_a += c
            if kind == CASE2:
                if gain < case2_gain(delta):
                    fail("case 2 gain below (D-1)(D-5)/((D+1)(D+2))")
            else:
                if in_a > t * (t - 1):
                    fail("maximum-degree second-shell vertices see too many deleted vertices")
                if gain < case3_sides(delta, t)[1]:
                    fail("case 3 gain below its closed form")
        prev = report.min_gain.get(kind)
        report.min_gain[kind] = gain if prev is None else min(prev, gain)
        alive = new_alive
    if alive:
        raise TraceInvalid("trace ends with live vertices left", len(trace))
    return report
