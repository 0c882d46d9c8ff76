"""Embed a graph in a maximum-degree-regular supergraph made of disjoint copies.

Each round doubles the current graph and joins every vertex whose degree is
still below ``Delta`` to its twin in the other half. Twins have no common
neighbour, so a twin edge lies in no triangle; cliques of size three or more
therefore stay inside one copy and ``omega`` is unchanged. After
``Delta - delta`` rounds the result is ``Delta``-regular with
``r = 2**(Delta - delta)`` copies, and vertex ``c*n + v`` is copy ``c`` of
``v``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidSet, NothingToDo
from .graph import Graph, VertexSet, _mask, is_forest_mask, is_linear_forest_mask

DEFAULT_MAX_VERTICES = 1 << 14


@dataclass(frozen=True)
class RegularizedGraph:
    g_prime: Graph
    base_n: int
    copies: int
    rounds: int

    def copy_map(self, v: int) -> tuple[int, int]:
        return divmod(v, self.base_n)

    def copy_mask(self, c: int) -> int:
        n = self.base_n
        return ((1 << n) - 1) << (c * n)

    def to_dict(self) -> dict:
        return {
            "n": self.g_prime.n,
            "copies": self.copies,
            "rounds": self.rounds,
            "copy_map": [list(self.copy_map(v)) for v in range(self.g_prime.n)],
        }


def regularize(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> RegularizedGraph:
    if g.m == 0:
        raise NothingToDo("edgeless graph is already regular")
    delta, low = max(g.degree), min(g.degree)
    rounds = delta - low
    if g.n << rounds > max_vertices:
        raise ValueError(f"regularization needs {g.n << rounds} vertices, cap is {max_vertices}")
    rows = list(g.adj)
    deg = list(g.degree)
    for _ in range(rounds):
        size = len(rows)
        new_rows = rows + [r << size for r in rows]
        new_deg = deg + deg
        for v in range(size):
            if deg[v] < delta:
                new_rows[v] |= 1 << (v + size)
                new_rows[v + size] |= 1 << v
                new_deg[v] += 1
                new_deg[v + size] += 1
        rows, deg = new_rows, new_deg
    return RegularizedGraph(Graph(len(rows), rows), g.n, 1 << rounds, rounds)


def extract_best_copy(reg: RegularizedGraph, s_prime: VertexSet, k: int | None = None) -> tuple[int, VertexSet]:
    """Copy holding the most of ``s_prime`` (lowest index on ties), projected to ``G``.

    ``k`` selects the feasibility notion: ``None`` for forests, otherwise
    linear ``k``-forests.
    """
    gp = reg.g_prime
    mask = _mask(gp, s_prime)
    ok = is_forest_mask(gp, mask) if k is None else is_linear_forest_mask(gp, mask, k)
    if not ok:
        raise InvalidSet("set is not feasible in the regularized graph")
    n = reg.base_n
    full = (1 << n) - 1
    best_c, best = 0, -1
    for c in range(reg.copies):
        part = mask >> (c * n) & full
        if part.bit_count() > best:
            best_c, best = c, part.bit_count()
    return best_c, VertexSet(n, mask >> (best_c * n) & full)
