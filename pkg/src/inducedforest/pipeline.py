"""End-to-end constructions behind ``a(G) >= 6n/(2D + omega + 2)``.

The method follows the clique number:

* ``omega <= 2``: the triangle-free construction on ``G`` itself, whose
  potential already dominates ``3n/(D+2)``;
* ``omega == 3``: K4-variant search on the regularization, best copy;
* ``omega >= 4``: Kq-variant search with ``q = omega + 1`` on the
  regularization, best copy (a linear 4-forest is a forest).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .certificates import certify, counting_bound
from .constructive import construct_triangle_free_forest
from .errors import NothingToDo
from .graph import Graph, VertexSet, clique_number, is_forest_mask, is_triangle_free
from .regularize import RegularizedGraph, extract_best_copy, regularize
from .search import LexVariant, search


@dataclass
class InvariantReport:
    regular: bool
    omega_preserved: bool
    triangle_free_preserved: bool
    copies_isomorphic: bool
    cross_edges_twin: bool

    @property
    def passed(self) -> bool:
        return all(vars(self).values())


def check_regularized(g: Graph, reg: RegularizedGraph, exact_omega: bool = True) -> InvariantReport:
    gp = reg.g_prime
    n = g.n
    delta = max(g.degree)
    regular = set(gp.degree) == {delta}
    full = (1 << n) - 1
    iso = True
    twin = True
    for v in range(gp.n):
        c, base = divmod(v, n)
        inside = gp.adj[v] >> (c * n) & full
        if inside != g.adj[base]:
            iso = False
        for u in range(gp.n):
            if gp.adj[v] >> u & 1 and u // n != c and u % n != base:
                twin = False
    omega_ok = clique_number(gp) == clique_number(g) if exact_omega else True
    tf_ok = is_triangle_free(gp) == is_triangle_free(g)
    return InvariantReport(regular, omega_ok, tf_ok, iso, twin)


@dataclass
class PipelineResult:
    method: str
    vertices: VertexSet
    floor: Fraction
    copies: int = 1
    invariants: InvariantReport | None = None
    certificates_passed: bool | None = None
    detail: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def floor_met(self) -> bool:
        return self.size >= math.ceil(self.floor)


def clique_degree_pipeline(g: Graph, order_seed: int | None = None, max_vertices: int | None = None) -> PipelineResult:
    if g.m == 0:
        raise NothingToDo("edgeless graph: the whole vertex set is a forest")
    st = g.stats()
    delta, omega = st.delta_max, st.omega
    floor = Fraction(6 * g.n, 2 * delta + omega + 2)
    if omega <= 2:
        cert, _ = construct_triangle_free_forest(g)
        return PipelineResult("tf", cert.vertices, floor)
    reg = regularize(g) if max_vertices is None else regularize(g, max_vertices)
    inv = check_regularized(g, reg)
    variant = LexVariant.k4() if omega == 3 else LexVariant.kq(omega + 1)
    state = search(reg.g_prime, variant, order_seed=order_seed, check_applicable=False)
    certs = certify(reg.g_prime, state, variant)
    cb = counting_bound(reg.g_prime, state, variant)
    copy, proj = extract_best_copy(reg, state.s, variant.linear_k)
    if not is_forest_mask(g, proj.members):
        raise AssertionError("projected set is not a forest")
    return PipelineResult(
        variant.name,
        proj,
        floor,
        reg.copies,
        inv,
        certs.passed and cb.holds,
        {"copy": copy, "size_in_regularized": state.size, "regularized_n": reg.g_prime.n},
    )
