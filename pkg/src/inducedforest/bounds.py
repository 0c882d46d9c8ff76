"""Lower bounds on the largest induced forest / linear forest, in exact
rational arithmetic, plus exhaustive checkers for the inequalities that the
triangle-free induction relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import BoundViolation, NotApplicable
from .graph import Graph, component_masks, edges_within

FOREST = "a"


def linear_target(k: int) -> str:
    return f"a{k}"


class PotentialKind(Enum):
    GENERAL = "general"  # f(d) = min(1, 2/(d+1))
    TRIANGLE_FREE = "triangle_free"  # f(d) = min(1, 3/(d+2))

    def __call__(self, d: int) -> Fraction:
        if self is PotentialKind.GENERAL:
            return min(Fraction(1), Fraction(2, d + 1))
        return min(Fraction(1), Fraction(3, d + 2))


def f_tf(d: int) -> Fraction:
    """Triangle-free potential ``min(1, 3/(d+2))``."""
    return PotentialKind.TRIANGLE_FREE(d)


def potential_sum(g: Graph, kind: PotentialKind) -> Fraction:
    return sum((kind(d) for d in g.degree), Fraction(0))


@dataclass(frozen=True)
class BoundEntry:
    id: str
    value: Fraction
    applicable: bool
    reason: str = ""
    target: str = FOREST  # "a", "a1", "a3", "a4"
    tight_choice: bool = False

    @property
    def ceil(self) -> int:
        return math.ceil(self.value)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "num": self.value.numerator,
            "den": self.value.denominator,
            "applicable": self.applicable,
            "target": self.target,
            "reason": self.reason,
        }


@dataclass
class BoundReport:
    n: int
    m: int
    stats: object
    entries: list = field(default_factory=list)
    graph_label: str | None = None

    @property
    def best_applicable(self) -> tuple[str, int] | None:
        """Largest ceiling among applicable bounds on ``a(G)`` itself."""
        best = None
        for e in self.entries:
            if e.applicable and e.target == FOREST:
                if best is None or e.ceil > best[1]:
                    best = (e.id, e.ceil)
        return best

    def applicable(self):
        return [e for e in self.entries if e.applicable]

    def get(self, bound_id: str) -> BoundEntry:
        for e in self.entries:
            if e.id == bound_id:
                return e
        raise KeyError(bound_id)

    def to_dict(self) -> dict:
        s = self.stats
        return {
            "graph_label": self.graph_label,
            "n": self.n,
            "m": self.m,
            "stats": {
                "delta_max": s.delta_max,
                "delta_min": s.delta_min,
                "omega": s.omega,
                "triangle_free": s.triangle_free,
                "avg_degree": [s.avg_degree.numerator, s.avg_degree.denominator],
            },
            "entries": [e.to_dict() for e in self.entries],
            "best_applicable": list(self.best_applicable) if self.best_applicable else None,
        }


def kq_values(omega: int) -> list[int]:
    lo = max(5, omega + 1)
    return list(range(lo, max(lo, omega + 3) + 1))


def _per_component(g: Graph, fn) -> Fraction:
    total = Fraction(0)
    for comp in component_masks(g, g.full_mask):
        total += fn(comp.bit_count(), edges_within(g, comp))
    return total


def closed_form_bounds(g: Graph, label: str | None = None) -> BoundReport:
    """Evaluate every lower bound; inapplicable ones are flagged, not dropped."""
    st = g.stats()
    n, m = g.n, g.m
    d, dmax, omega, tf = st.avg_degree, st.delta_max, st.omega, st.triangle_free
    report = BoundReport(n, m, st, graph_label=label)
    add = report.entries.append

    def entry(bid, value_fn, conds, target=FOREST, tight=False):
        reasons = [why for ok, why in conds if not ok]
        if n < 1:
            reasons.insert(0, "empty graph")
        add(BoundEntry(bid, Fraction(value_fn()), not reasons, "; ".join(reasons), target, tight))

    not_tf = (tf, "not triangle-free")
    pos_delta = (dmax > 0, "maximum degree is 0")

    entry("aks_potential", lambda: potential_sum(g, PotentialKind.GENERAL), [])
    entry("aks_avg_degree", lambda: Fraction(2 * n) / (d + 1), [(d >= 2, "average degree below 2")])
    entry("aks_max_degree", lambda: Fraction(2 * n, dmax + 1), [pos_delta])
    entry("amt_triangle_free", lambda: n - Fraction(m, 4), [not_tf])
    entry(
        "shi_xu",
        lambda: _per_component(g, lambda a, b: Fraction(20 * a - 5 * b - 5, 19)),
        [not_tf],
    )
    entry(
        "amt_k4free_subcubic",
        lambda: _per_component(g, lambda a, b: a - Fraction(b, 4) - Fraction(1, 4)),
        [(omega <= 3, "contains K4"), (dmax <= 3, "maximum degree above 3")],
    )
    entry("tf_potential", lambda: potential_sum(g, PotentialKind.TRIANGLE_FREE), [not_tf])
    entry("tf_avg_degree", lambda: Fraction(3 * n) / (d + 2), [not_tf, (d >= 2, "average degree below 2")])
    entry("clique_degree", lambda: Fraction(6 * n, 2 * dmax + omega + 2), [pos_delta])
    entry("k4_free", lambda: Fraction(6 * n, 2 * dmax + 5), [pos_delta, (omega <= 3, "contains K4")])
    tight_q = max(5, omega + 1)
    for q in kq_values(omega):
        entry(
            f"kq_free_q{q}",
            lambda q=q: Fraction(6 * n, 2 * dmax + q + 1),
            [(omega < q, f"contains K{q}")],
            target=linear_target(4),
            tight=q == tight_q,
        )
    entry("a3_max_degree", lambda: Fraction(2 * n, dmax + 1), [pos_delta], target=linear_target(3))
    entry(
        "hopkins_a1",
        lambda: Fraction(2 * n, dmax + 1),
        [(dmax % 2 == 1, "maximum degree is even")],
        target=linear_target(1),
    )
    low_avg = (d <= 4, "average degree above 4")
    entry("tf_avg4_15_29", lambda: Fraction(15 * n, 29), [not_tf, low_avg])
    entry("tf_avg4_half", lambda: Fraction(n + 1, 2), [not_tf, low_avg])
    return report


def verify_case1_inequality(delta: int) -> bool:
    """``-3/(D+2) + D(3/D - 3/(D+1)) >= 0``: the pivot-deletion step never loses potential."""
    return -Fraction(3, delta + 2) + delta * (Fraction(3, delta) - Fraction(3, delta + 1)) >= 0


def _check_range(delta_range, lo=5, hi=10**4):
    a, b = delta_range
    if a < lo or b > hi or a > b:
        raise ValueError(f"range must lie within [{lo}, {hi}]")
    return range(a, b + 1)


def check_lemma_21(delta_range: tuple[int, int]) -> list[tuple]:
    """All ``(D, d, q)`` with ``2<=d<=D``, ``0<=q<=d`` violating
    ``f(d-q) - f(d) >= q (f(D-1) - f(D))``. Expected to be empty."""
    bad = []
    for delta in _check_range(delta_range):
        step = f_tf(delta - 1) - f_tf(delta)
        for d in range(2, delta + 1):
            fd = f_tf(d)
            for q in range(d + 1):
                lhs = f_tf(d - q) - fd
                if lhs < q * step:
                    bad.append((delta, d, q, lhs, q * step))
    return bad


def check_lemma_22(delta_range: tuple[int, int]) -> list[tuple]:
    """As :func:`check_lemma_21` with ``d < D`` and step ``f(D-2) - f(D-1)``."""
    bad = []
    for delta in _check_range(delta_range):
        step = f_tf(delta - 2) - f_tf(delta - 1)
        for d in range(2, delta):
            fd = f_tf(d)
            for q in range(d + 1):
                lhs = f_tf(d - q) - fd
                if lhs < q * step:
                    bad.append((delta, d, q, lhs, q * step))
    return bad


def case3_sides(delta: int, t: int) -> tuple[Fraction, Fraction]:
    """Both sides of the closed form for the potential gain when ``t`` of the
    pivot's neighbours have maximum degree (``1 <= t <= D-1``)."""
    if not 1 <= t <= delta - 1:
        raise ValueError("t must satisfy 1 <= t <= delta-1")
    D = delta
    lhs = (
        Fraction(3, D - t + 2)
        - Fraction(3, D + 2)
        - t * Fraction(3, D + 2)
        + t * (t - 1) * (Fraction(3, D + 1) - Fraction(3, D + 2))
        + t * (D - t) * (Fraction(3, D) - Fraction(3, D + 1))
    )
    rhs = Fraction(
        3 * t * ((D - t) ** 2 + (t - 2) ** 2 + D - 4),
        D * (D + 1) * (D + 2) * (D - t + 2),
    )
    return lhs, rhs


def check_case3_identity(delta_range: tuple[int, int]) -> list[tuple]:
    bad = []
    for delta in _check_range(delta_range):
        for t in range(1, delta):
            lhs, rhs = case3_sides(delta, t)
            if lhs != rhs or rhs < 0:
                bad.append((delta, t, lhs, rhs))
    return bad


def case2_gain(delta: int) -> Fraction:
    """Closed-form potential gain when every neighbour of the pivot has maximum degree."""
    return Fraction((delta - 1) * (delta - 5), (delta + 1) * (delta + 2))


def jensen_floor(g: Graph) -> Fraction:
    """``3n/(d+2)`` for triangle-free graphs of average degree ``d >= 2``.

    When the minimum degree is at least 1 the triangle-free potential sum is
    checked to dominate the floor (convexity of ``3/(x+2)``).
    """
    st = g.stats()
    if not st.triangle_free:
        raise NotApplicable("graph contains a triangle")
    if g.n == 0 or st.avg_degree < 2:
        raise NotApplicable("average degree below 2")
    floor = Fraction(3 * g.n) / (st.avg_degree + 2)
    if st.delta_min >= 1:
        pot = potential_sum(g, PotentialKind.TRIANGLE_FREE)
        if pot < floor:
            raise BoundViolation(f"potential {pot} below Jensen floor {floor}")
    return floor


def check_potential_shape(d_max: int) -> list[tuple]:
    """Both potentials must be nonincreasing on ``[0, d_max]`` and convex on
    ``[1, d_max]`` (where they coincide with ``2/(d+1)`` and ``3/(d+2)``).
    Returns ``(kind, property, d)`` for every failure."""
    if d_max < 3:
        raise ValueError("d_max must be at least 3")
    bad = []
    for kind in PotentialKind:
        vals = [kind(d) for d in range(d_max + 1)]
        for d in range(d_max):
            if vals[d + 1] > vals[d]:
                bad.append((kind.value, "monotone", d))
        for d in range(2, d_max):
            if vals[d - 1] + vals[d + 1] < 2 * vals[d]:
                bad.append((kind.value, "convex", d))
    return bad
