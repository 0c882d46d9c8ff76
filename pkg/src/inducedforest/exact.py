"""Exact maximum induced forest and induced linear k-forest by branch and bound.

Both properties are hereditary, so the search is a hitting-set search over
*obstructions*: small vertex sets that can never lie entirely inside a
feasible set (cycles; for linear forests also claws and over-long paths).
A node keeps a committed set ``I`` (always feasible) and an undecided set
``C``. If ``G[I | C]`` is feasible it is a solution; otherwise one obstruction
is picked and the search branches on which of its undecided vertices is the
first one dropped. Vertex-disjoint obstructions give the pruning bound.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import Incomplete
from .graph import (
    Graph,
    VertexSet,
    component_masks,
    edges_within,
    is_forest_mask,
    is_linear_forest_mask,
    iter_bits,
    lowest_bit,
)

SOFT_N_LIMIT = 40


@dataclass(frozen=True)
class ExactResult:
    target: str  # "forest" or "linear_<k>"
    optimum: int
    witness: VertexSet
    nodes_explored: int
    time: float
    complete: bool = True

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "optimum": self.optimum,
            "witness": self.witness.to_list(),
            "nodes": self.nodes_explored,
            "ms": round(self.time * 1000, 3),
            "complete": self.complete,
        }


def _cycle_through(adj, live: int, root: int) -> int:
    """Mask of a short cycle found by BFS from ``root`` inside ``live`` (0 if none)."""
    parent = {root: -1}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            pv = parent[v]
            for u in iter_bits(adj[v] & live):
                if u == pv:
                    continue
                if u in parent:
                    a, b = v, u
                    up_a, up_b = [a], [b]
                    seen_a = {a}
                    while parent[a] != -1:
                        a = parent[a]
                        up_a.append(a)
                        seen_a.add(a)
                    while b not in seen_a:
                        b = parent[b]
                        up_b.append(b)
                    mask = 0
                    for x in up_a[: up_a.index(b) + 1]:
                        mask |= 1 << x
                    for x in up_b:
                        mask |= 1 << x
                    return mask
                parent[u] = v
                nxt.append(u)
        frontier = nxt
    return 0


def _two_core(adj, live: int) -> int:
    changed = True
    while changed:
        changed = False
        for v in iter_bits(live):
            if (adj[v] & live).bit_count() <= 1:
                live &= ~(1 << v)
                changed = True
    return live


class _ForestProperty:
    name = "forest"

    def __init__(self, g: Graph):
        self.g = g
        self.adj = g.adj

    def feasible(self, mask: int) -> bool:
        return is_forest_mask(self.g, mask)

    def free(self, v: int, live: int) -> bool:
        return (self.adj[v] & live).bit_count() <= 1

    def obstruction(self, live: int) -> int:
        core = _two_core(self.adj, live)
        if not core:
            return 0
        best = 0
        roots = sorted(iter_bits(core), key=lambda v: (self.adj[v] & core).bit_count())
        for r in roots[:8]:
            cyc = _cycle_through(self.adj, core, r)
            if cyc and (not best or cyc.bit_count() < best.bit_count()):
                best = cyc
                if best.bit_count() <= 3:
                    break
        return best


class _LinearForestProperty:
    def __init__(self, g: Graph, k: int):
        self.g = g
        self.adj = g.adj
        self.k = k
        self.name = f"linear_{k}"

    def feasible(self, mask: int) -> bool:
        return is_linear_forest_mask(self.g, mask, self.k)

    def free(self, v: int, live: int) -> bool:
        return not self.adj[v] & live

    def obstruction(self, live: int) -> int:
        adj = self.adj
        for v in iter_bits(live):
            nb = adj[v] & live
            if nb.bit_count() >= 3:
                mask = 1 << v
                for _ in range(3):
                    low = nb & -nb
                    mask |= low
                    nb ^= low
                return mask
        for comp in component_masks(self.g, live):
            size = comp.bit_count()
            e = edges_within(self.g, comp)
            if e == size and size >= 3:
                return comp
            if e > self.k:
                # a path component: walk k+1 edges from one end
                end = next(v for v in iter_bits(comp) if (adj[v] & comp).bit_count() == 1)
                mask = 0
                cur = end
                for _ in range(self.k + 2):
                    mask |= 1 << cur
                    nxt = adj[cur] & comp & ~mask
                    cur = lowest_bit(nxt) if nxt else -1
                return mask
        return 0


def _greedy(prop, g: Graph) -> int:
    order = sorted(range(g.n), key=lambda v: (g.degree[v], v))
    mask = 0
    for v in order:
        if prop.feasible(mask | 1 << v):
            mask |= 1 << v
    return mask


def _solve(g: Graph, prop, budget: int | None, incumbent: int = 0) -> ExactResult:
    start = time.perf_counter()
    best = incumbent if prop.feasible(incumbent) else 0
    greedy = _greedy(prop, g)
    if greedy.bit_count() > best.bit_count():
        best = greedy
    nodes = 0

    def node(inc: int, cand: int):
        nonlocal best, nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _OutOfBudget
        # reductions to a fixpoint
        changed = True
        while changed:
            changed = False
            live = inc | cand
            for v in iter_bits(cand):
                bit = 1 << v
                if not prop.feasible(inc | bit):
                    cand &= ~bit
                    live &= ~bit
                    changed = True
                elif prop.free(v, live):
                    inc |= bit
                    cand &= ~bit
                    changed = True
        live = inc | cand
        if live.bit_count() <= best.bit_count():
            return
        first = prop.obstruction(live)
        if not first:
            best = live
            return
        packing = 1
        rest = live & ~first
        while True:
            ob = prop.obstruction(rest)
            if not ob:
                break
            packing += 1
            rest &= ~ob
            if live.bit_count() - packing <= best.bit_count():
                return
        if live.bit_count() - packing <= best.bit_count():
            return
        forced = inc
        for x in iter_bits(first & cand):
            node(forced, cand & ~(1 << x) & ~forced)
            forced |= 1 << x
            if not prop.feasible(forced):
                break

    complete = True
    try:
        node(0, g.full_mask)
    except _OutOfBudget:
        complete = False
    result = ExactResult(
        prop.name, best.bit_count(), VertexSet(g.n, best), nodes, time.perf_counter() - start, complete
    )
    if not complete:
        raise Incomplete(f"node budget {budget} exhausted", result)
    return result


class _OutOfBudget(Exception):
    pass


def max_induced_forest(g: Graph, budget: int | None = None, incumbent: VertexSet | None = None) -> ExactResult:
    """``a(G)`` with a witness. Raises :class:`Incomplete` when ``budget``
    (a node limit) runs out; the exception carries the best incumbent."""
    seed = incumbent.members if incumbent is not None else 0
    return _solve(g, _ForestProperty(g), budget, seed)


def max_induced_linear_k_forest(g: Graph, k: int, budget: int | None = None) -> ExactResult:
    if k < 1:
        raise ValueError("k must be at least 1")
    return _solve(g, _LinearForestProperty(g, k), budget)


def solve_target(g: Graph, target: str, budget: int | None = None) -> ExactResult:
    """Dispatch on a bound target name: ``"a"`` or ``"a<k>"``."""
    if target == "a":
        return max_induced_forest(g, budget)
    return max_induced_linear_k_forest(g, int(target[1:]), budget)


@dataclass(frozen=True)
class Violation:
    bound_id: str
    target: str
    optimum: int
    required: int


def verify_bound_against_exact(g: Graph, report, budget: int | None = None, cache: dict | None = None) -> list[Violation]:
    """Check ``optimum(target) >= ceil(value)`` for each applicable entry."""
    cache = {} if cache is None else cache
    out = []
    for e in report.entries:
        if not e.applicable:
            continue
        if e.target not in cache:
            cache[e.target] = solve_target(g, e.target, budget).optimum
        if cache[e.target] < e.ceil:
            out.append(Violation(e.id, e.target, cache[e.target], e.ceil))
    return out
