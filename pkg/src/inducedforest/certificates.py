"""Post-convergence checks for exchange-search states.

Each predicate is a structural property that a local optimum of the
corresponding variant must have, because a violation exhibits an improving
move inside the search neighbourhood. Failures are reported as data with a
witness, never raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BoundViolation, NotCertified
from .graph import Graph, component_masks, edges_within, iter_bits
from .search import LexVariant, SearchState


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: tuple = ()

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": list(self.witness)}


@dataclass
class CertificateReport:
    variant: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"variant": self.variant, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


class _View:
    """Everything the predicates read, computed once per state."""

    def __init__(self, g: Graph, mask: int):
        self.g = g
        self.adj = g.adj
        self.mask = mask
        self.comps = component_masks(g, mask)
        self.comp_of = {x: c for c in self.comps for x in iter_bits(c)}
        self.ds = {s: (self.adj[s] & mask).bit_count() for s in iter_bits(mask)}
        self.s0 = sum(1 << s for s, d in self.ds.items() if d == 0)
        self.b = {}
        for v in iter_bits(g.full_mask & ~mask):
            i = (self.adj[v] & mask).bit_count()
            self.b[i] = self.b.get(i, 0) | 1 << v

    def B(self, i: int) -> int:
        return self.b.get(i, 0)

    def B_at_least(self, i: int) -> int:
        out = 0
        for j, m in self.b.items():
            if j >= i:
                out |= m
        return out

    def s_nbrs(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v] & self.mask))


def _check(name: str, witnesses: list) -> CheckResult:
    return CheckResult(name, not witnesses, tuple(witnesses[:10]))


def _beta_checks(view: _View) -> list[CheckResult]:
    return [
        _check("beta0_zero", list(iter_bits(view.B(0)))),
        _check("beta1_zero", list(iter_bits(view.B(1)))),
    ]


def _k4_checks(view: _View) -> list[CheckResult]:
    adj, mask, b2 = view.adj, view.mask, view.B(2)
    out = []
    out.append(_check("b2_avoids_isolated", [v for v in iter_bits(b2) if adj[v] & view.s0]))
    out.append(_check("at_most_two_b2_per_vertex", [s for s in iter_bits(mask) if (adj[s] & b2).bit_count() > 2]))
    split = [v for v in iter_bits(b2) if len({view.comp_of[x] for x in view.s_nbrs(v)}) > 1]
    out.append(_check("b2_inside_one_tree", split))
    over, small_over = [], []
    for c in view.comps:
        seen = sum(1 for v in iter_bits(b2) if adj[v] & c)
        size = c.bit_count()
        if seen > size:
            over.append(min(iter_bits(c)))
        if 2 <= size <= 7 and seen > size - 1:
            small_over.append(min(iter_bits(c)))
    out.append(_check("tree_b2_at_most_size", over))
    out.append(_check("small_tree_b2_below_size", small_over))
    b3 = view.B(3)
    bad5, bad6 = [], []
    for v in iter_bits(b3):
        on_s0 = adj[v] & view.s0
        if on_s0:
            others = [s for s in view.s_nbrs(v) if not view.s0 >> s & 1]
            if on_s0.bit_count() == 1 and any(view.ds[s] < 2 for s in others):
                bad5.append(v)
            if on_s0.bit_count() > 1:
                bad6.append(v)
                bad5.append(v)
    out.append(_check("b3_on_isolated_sees_inner", bad5))
    out.append(_check("b3_at_most_one_isolated", bad6))
    # at most one B2 vertex over any edge of G[S]
    edge_bad = []
    for s in iter_bits(mask):
        for t in iter_bits(adj[s] & mask & ~((1 << (s + 1)) - 1)):
            if (adj[s] & adj[t] & b2).bit_count() > 1:
                edge_bad.append((s, t))
    out.append(_check("edge_has_one_common_b2", edge_bad))
    # the two B2 vertices at s lead back into the same piece of T - s
    sep_bad = []
    for s in iter_bits(mask):
        around = adj[s] & b2
        if around.bit_count() != 2:
            continue
        tree = view.comp_of[s]
        ends = []
        for v in iter_bits(around):
            other = adj[v] & mask & ~(1 << s)
            ends.append(other.bit_length() - 1)
        if not all(tree >> e & 1 for e in ends):
            continue
        pieces = component_masks(view.g, tree & ~(1 << s))
        if not any(p >> ends[0] & 1 and p >> ends[1] & 1 for p in pieces):
            sep_bad.append(s)
    out.append(_check("b2_pair_same_branch", sep_bad))
    # a leaf next to a degree-2 vertex only shares B2 vertices with leaves
    leaf_bad = []
    for s in iter_bits(mask):
        if view.ds[s] != 1:
            continue
        s1 = (adj[s] & mask).bit_length() - 1
        if view.ds[s1] != 2:
            continue
        for v in iter_bits(adj[s] & b2):
            s2 = (adj[v] & mask & ~(1 << s)).bit_length() - 1
            if s2 != s1 and view.comp_of[s2] == view.comp_of[s] and view.ds[s2] >= 2:
                leaf_bad.append((s, v))
    out.append(_check("leaf_b2_pairs_with_leaf", leaf_bad))
    return out


def _paths(view: _View) -> list[tuple[int, int, tuple]]:
    """(mask, length, endpoints) for each component of a linear forest."""
    out = []
    for c in view.comps:
        length = c.bit_count() - 1
        ends = tuple(x for x in iter_bits(c) if view.ds[x] <= 1)
        out.append((c, length, ends))
    return out


def _kq_checks(view: _View, q: int) -> list[CheckResult]:
    adj, mask, b2 = view.adj, view.mask, view.B(2)
    out = []
    out.append(_check("b2_touches_endpoints", [v for v in iter_bits(b2) if any(view.ds[s] > 1 for s in view.s_nbrs(v))]))
    clique_bad = []
    for s in iter_bits(mask):
        if view.ds[s] != 1:
            continue
        around = list(iter_bits(adj[s] & b2))
        if len(around) > q - 2 or any(not adj[x] >> y & 1 for i, x in enumerate(around) for y in around[i + 1:]):
            clique_bad.append(s)
    out.append(_check("end_b2_form_clique", clique_bad))
    paths = _paths(view)
    long_ends = 0
    for c, length, ends in paths:
        if length >= 3:
            for e in ends:
                long_ends |= 1 << e
    short_pairs = {frozenset(ends) for c, length, ends in paths if length in (1, 2)}
    cover_bad = []
    for v in iter_bits(b2):
        if adj[v] & long_ends:
            continue
        if frozenset(view.s_nbrs(v)) in short_pairs:
            continue
        cover_bad.append(v)
    out.append(_check("b2_served_by_a_path", cover_bad))
    edge_bad = []
    for c, length, ends in paths:
        if length == 1:
            x, y = ends
            if (adj[x] & adj[y] & b2).bit_count() > q - 3:
                edge_bad.append(ends)
    out.append(_check("edge_path_b2_at_most_q_minus_3", edge_bad))
    return out


def _a3_checks(view: _View) -> list[CheckResult]:
    adj = view.adj
    thin = view.B(1) | view.B(2)
    return [_check("isolated_seen_by_three", [v for v in iter_bits(thin) if adj[v] & view.s0])]


def certify(g: Graph, state: SearchState, variant: LexVariant) -> CertificateReport:
    view = _View(g, state.s.members)
    checks = _beta_checks(view)
    if variant.kind == "K4":
        checks += _k4_checks(view)
    elif variant.kind == "Kq":
        checks += _kq_checks(view, variant.q)
    else:
        checks += _a3_checks(view)
    return CertificateReport(variant.name, checks)


@dataclass(frozen=True)
class CountingBound:
    """The counting inequality behind a variant's floor, evaluated on a state.

    ``holds`` means ``lhs >= rhs``; together with ``beta_0 = beta_1 = 0`` this
    forces ``|S| >= floor`` in any graph of maximum degree ``delta``.
    """

    floor: Fraction
    holds: bool
    lhs: Fraction
    rhs: Fraction
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "floor": [self.floor.numerator, self.floor.denominator],
            "holds": self.holds,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


def path_potential(length: int, q: int) -> Fraction:
    return 2 * length + Fraction((length + 1) * (q - 5), 2)


def counting_bound(g: Graph, state: SearchState, variant: LexVariant) -> CountingBound:
    if not state.converged:
        raise NotCertified("counting bound needs a converged state")
    view = _View(g, state.s.members)
    n = g.n
    delta = max(g.degree) if n else 0
    size = state.size
    detail: dict = {}
    if variant.kind == "K4":
        lhs = Fraction(2 * sum(c.bit_count() - 1 for c in view.comps) - view.B(2).bit_count() + view.B_at_least(4).bit_count())
        rhs = Fraction(size, 2)
        floor = Fraction(6 * n, 2 * delta + 5) if delta else Fraction(0)
        holds = lhs >= rhs
    elif variant.kind == "A3":
        lhs = Fraction(view.B_at_least(3).bit_count())
        rhs = Fraction(view.s0.bit_count())
        floor = Fraction(2 * n, delta + 1) if delta else Fraction(0)
        holds = lhs >= rhs
    else:
        q = variant.q
        adj = view.adj
        paths = _paths(view)
        budget = {c: path_potential(length, q) for c, length, _ in paths}
        received = {c: 0 for c, _, _ in paths}
        unserved = []
        for v in iter_bits(view.B(2)):
            owner = None
            for c, length, ends in paths:
                if length >= 3 and any(adj[v] >> e & 1 for e in ends):
                    owner = c
                    break
            if owner is None:
                nb = frozenset(view.s_nbrs(v))
                for c, length, ends in paths:
                    if length in (1, 2) and frozenset(ends) == nb:
                        owner = c
                        break
            if owner is None:
                unserved.append(v)
            else:
                received[owner] += 1
        short = [min(iter_bits(c)) for c in received if received[c] > budget[c]]
        lhs = Fraction(view.B(2).bit_count())
        rhs = sum(budget.values(), Fraction(0))
        floor = Fraction(6 * n, 2 * delta + q + 1) if delta else Fraction(0)
        holds = not unserved and not short
        detail = {"unserved": unserved, "over_budget_paths": short}
    beta_ok = not view.B(0) and not view.B(1)
    if holds and beta_ok and delta and size < floor:
        raise BoundViolation(f"counting inequality holds but |S|={size} < {floor}")
    detail["beta_zero"] = beta_ok
    return CountingBound(floor, holds, lhs, rhs, detail)
