"""Lexicographic exchange local search for induced forests and linear forests.

A state is a feasible set ``S``. A move removes at most three vertices of
``S`` and adds at most two outside vertices; it is accepted only when the
result is feasible and its objective vector is lexicographically larger.
Every objective is a sum of per-component terms, so a move only re-scores
the components it touches.

Neighbourhood (the default, local one):

* add candidates are outside vertices with at most three neighbours in ``S``;
* a single addition ``v`` may remove vertices from ``N_S(v)``, their
  ``S``-neighbours, and the tree paths joining two vertices of ``N_S(v)``
  (the only places a cycle closed by ``v`` can be broken);
* a pair addition ``{v, w}`` must touch a common component of ``G[S]`` and
  removes vertices from ``N_S(v) | N_S(w)``.

``full_radius=True`` drops both restrictions.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from .errors import Incomplete, InvalidSeed, NotApplicable
from .graph import (
    BetaCounts,
    Graph,
    VertexSet,
    _mask,
    beta_counts,
    bfs_layers,
    component_masks,
    edges_within,
    has_clique,
    iter_bits,
    lowest_bit,
    tree_stats_mask,
)

MAX_REMOVE = 3
MAX_ADD = 2
RECHECK_EVERY = 100


@dataclass(frozen=True)
class LexVariant:
    kind: str  # "K4" | "Kq" | "A3"
    q: int | None = None

    def __post_init__(self):
        if self.kind not in ("K4", "Kq", "A3"):
            raise ValueError(f"unknown variant {self.kind!r}")
        if self.kind == "Kq" and (self.q is None or self.q < 5):
            raise ValueError("the Kq variant needs q >= 5")

    @classmethod
    def k4(cls) -> "LexVariant":
        return cls("K4")

    @classmethod
    def kq(cls, q: int) -> "LexVariant":
        return cls("Kq", q)

    @classmethod
    def a3(cls) -> "LexVariant":
        return cls("A3")

    @classmethod
    def parse(cls, text: str) -> "LexVariant":
        """``"k4"``, ``"a3"`` or ``"kq:<q>"``."""
        t = text.strip().lower()
        if t == "k4":
            return cls.k4()
        if t == "a3":
            return cls.a3()
        if t.startswith("kq:"):
            return cls.kq(int(t[3:]))
        raise ValueError(f"unknown variant {text!r}")

    @property
    def name(self) -> str:
        return f"Kq({self.q})" if self.kind == "Kq" else self.kind

    @property
    def linear_k(self) -> int | None:
        return {"K4": None, "Kq": 4, "A3": 3}[self.kind]

    @property
    def prefix_len(self) -> int:
        return 1 if self.kind == "Kq" else 2

    def check_applicable(self, g: Graph) -> None:
        if self.kind == "K4" and has_clique(g, 4):
            raise NotApplicable("the K4 variant needs a K4-free graph")
        if self.kind == "Kq" and has_clique(g, self.q):
            raise NotApplicable(f"the Kq variant needs a K{self.q}-free graph")

    def prefix(self, size: int, edges: int) -> tuple:
        """Leading objective keys, computable from ``|S|`` and ``e(S)`` alone."""
        if self.kind == "K4":
            return (size, edges)
        if self.kind == "Kq":
            return (3 * size - edges,)
        return (size, -edges)

    def component_terms(self, g: Graph, comp: int) -> tuple:
        size = comp.bit_count()
        if self.kind == "Kq":
            return (2 * size + 1, 1 if size == 1 else 0)
        if self.kind == "A3":
            return (size, 1 - size, 2 if size >= 2 else 0)
        if size == 1:
            return (1, 0, 0, 0, -1)
        st = tree_stats_mask(g, comp)
        adj = g.adj
        leaves = sum(1 for v in iter_bits(comp) if (adj[v] & comp).bit_count() == 1)
        return (size, size - 1, leaves, st.max_degree, -st.diameter_path_count)

    def max_remove(self, n_add: int) -> int:
        # K4/A3 lead with |S|, so |R| > |A| never improves. For Kq, dropping
        # r vertices of a linear forest loses at most 2r edges, so
        # 3(|A|-r) - e(S') + e(S) > 0 forces r <= |A| + 1.
        if self.kind == "Kq":
            return min(MAX_REMOVE, n_add + 1)
        return min(MAX_REMOVE, n_add)

    def region_feasible(self, g: Graph, region: int) -> bool:
        comps = component_masks(g, region)
        if self.kind == "K4":
            return edges_within(g, region) == region.bit_count() - len(comps)
        adj = g.adj
        k = self.linear_k
        for v in iter_bits(region):
            if (adj[v] & region).bit_count() > 2:
                return False
        for c in comps:
            e = edges_within(g, c)
            if e != c.bit_count() - 1 or e > k:
                return False
        return True

    def feasible(self, g: Graph, mask: int) -> bool:
        return self.region_feasible(g, mask)

    def objective(self, g: Graph, mask: int) -> tuple:
        total = self.zero()
        for c in component_masks(g, mask):
            total = _add(total, self.component_terms(g, c))
        return total

    def zero(self) -> tuple:
        return (0,) * {"K4": 5, "Kq": 2, "A3": 3}[self.kind]

    def to_prefix(self, objective: tuple) -> tuple:
        return objective[: self.prefix_len]


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class Move:
    remove: VertexSet
    add: VertexSet
    objective_before: tuple
    objective_after: tuple

    def to_dict(self) -> dict:
        return {
            "remove": self.remove.to_list(),
            "add": self.add.to_list(),
            "before": list(self.objective_before),
            "after": list(self.objective_after),
        }


@dataclass
class SearchState:
    s: VertexSet
    objective_vector: tuple
    beta: BetaCounts
    trees: list
    move_log: list = field(default_factory=list)
    converged: bool = False
    variant: LexVariant | None = None

    @property
    def size(self) -> int:
        return len(self.s)


class _Engine:
    """Incremental state for one search run.

    For forests the engine keeps every tree rooted (parent, depth, entry and
    exit times) so that feasibility of a move is decided from the few
    vertices around it, without rescanning large trees.
    """

    def __init__(self, g: Graph, variant: LexVariant, mask: int, full_radius: bool, order: list[int]):
        self.g = g
        self.adj = g.adj
        self.v = variant
        self.rooted = variant.kind == "K4"
        self.full_radius = full_radius
        self.order = order
        self.mask = 0
        self.comp_of: dict[int, int] = {}
        self.terms: dict[int, tuple] = {}
        self.root: dict[int, int] = {}
        n = g.n
        self.parent = [-1] * n
        self.depth = [0] * n
        self.tin = [0] * n
        self.tout = [0] * n
        self.children: list[list[int]] = [[] for _ in range(n)]
        self.obj = variant.zero()
        self.edges = 0
        self._load(mask)

    def _load(self, mask: int):
        self.mask = mask
        self.comp_of.clear()
        self.terms.clear()
        self.root.clear()
        self.obj = self.v.zero()
        for c in component_masks(self.g, mask):
            self._insert(c)
        self.edges = edges_within(self.g, mask)

    def _insert(self, comp: int):
        t = self.v.component_terms(self.g, comp)
        self.terms[comp] = t
        self.obj = _add(self.obj, t)
        for x in iter_bits(comp):
            self.comp_of[x] = comp
        if self.rooted:
            self._root_tree(comp)

    def _root_tree(self, comp: int):
        adj, parent, depth, tin, tout, children = self.adj, self.parent, self.depth, self.tin, self.tout, self.children
        r = lowest_bit(comp)
        self.root[comp] = r
        parent[r] = -1
        depth[r] = 0
        clock = 0
        stack = [(r, False)]
        while stack:
            x, done = stack.pop()
            if done:
                tout[x] = clock
                continue
            tin[x] = clock
            clock += 1
            stack.append((x, True))
            kids = [y for y in iter_bits(adj[x] & comp) if y != parent[x]]
            children[x] = kids
            for y in kids:
                parent[y] = x
                depth[y] = depth[x] + 1
                stack.append((y, False))

    def _affected(self, rem: int, add: int) -> int:
        touch = rem
        for a in iter_bits(add):
            touch |= self.adj[a] & self.mask
        old = 0
        for x in iter_bits(touch):
            old |= self.comp_of[x]
        return old

    def _top(self, x: int, cuts: list[int]) -> int:
        """Highest vertex of the piece of ``x``'s tree left after deleting ``cuts``."""
        tin, tout = self.tin, self.tout
        best = -1
        for r in cuts:
            if tin[r] < tin[x] < tout[r] and (best < 0 or self.depth[r] > self.depth[best]):
                best = r
        if best < 0:
            return self.root[self.comp_of[x]]
        for c in self.children[best]:
            if tin[c] <= tin[x] < tout[c]:
                return c
        raise AssertionError("descendant not found under its ancestor")

    def _forest_after(self, rem: int, add: int) -> bool:
        adj, comp_of = self.adj, self.comp_of
        rest = self.mask & ~rem
        rl = list(iter_bits(rem))
        link: dict[int, int] = {}

        def find(x):
            while link.get(x, x) != x:
                x = link[x]
            return x

        def join(x, y) -> bool:
            x, y = find(x), find(y)
            if x == y:
                return False
            link[x] = y
            return True

        al = list(iter_bits(add))
        for a in al:
            for x in iter_bits(adj[a] & rest):
                cuts = [r for r in rl if comp_of[r] == comp_of[x]]
                if not join(-1 - a, self._top(x, cuts)):
                    return False
        for i, a in enumerate(al):
            for b in al[i + 1:]:
                if adj[a] >> b & 1 and not join(-1 - a, -1 - b):
                    return False
        return True

    def _leaf_gain(self, rem: int, add: int) -> int:
        """Change in the number of degree-one vertices of ``G[S]``."""
        adj, mask = self.adj, self.mask
        after = (mask & ~rem) | add
        touched = rem | add
        for x in iter_bits(rem | add):
            touched |= adj[x] & mask
        gain = 0
        for x in iter_bits(touched):
            if mask >> x & 1 and (adj[x] & mask).bit_count() == 1:
                gain -= 1
            if after >> x & 1 and (adj[x] & after).bit_count() == 1:
                gain += 1
        return gain

    def evaluate(self, rem: int, add: int):
        """Return the new objective if the move improves, ``True`` when only the
        prefix has been checked and it already improves, else ``None``."""
        adj, mask = self.adj, self.mask
        rest = mask & ~rem
        e = self.edges
        for r in iter_bits(rem):
            e -= (adj[r] & mask).bit_count()
        e += edges_within(self.g, rem) if rem & (rem - 1) else 0
        for a in iter_bits(add):
            e += (adj[a] & rest).bit_count()
        e += edges_within(self.g, add) if add & (add - 1) else 0
        size = rest.bit_count() + add.bit_count()
        cur = self.v.to_prefix(self.obj)
        new = self.v.prefix(size, e)
        if new < cur:
            return None
        if self.rooted:
            if not self._forest_after(rem, add):
                return None
            if new > cur:
                return True
            gain = self._leaf_gain(rem, add)
            if gain:
                return True if gain > 0 else None
            old = self._affected(rem, add)
            region = (old & ~rem) | add
        else:
            old = self._affected(rem, add)
            region = (old & ~rem) | add
            if not self.v.region_feasible(self.g, region):
                return None
        obj = self.obj
        for c in {self.comp_of[x] for x in iter_bits(old)}:
            obj = _sub(obj, self.terms[c])
        for c in component_masks(self.g, region):
            obj = _add(obj, self.v.component_terms(self.g, c))
        return obj if obj > self.obj else None

    def apply(self, rem: int, add: int):
        old = self._affected(rem, add)
        for c in {self.comp_of[x] for x in iter_bits(old)}:
            self.obj = _sub(self.obj, self.terms.pop(c))
            self.root.pop(c, None)
            for x in iter_bits(c):
                del self.comp_of[x]
        self.mask = (self.mask & ~rem) | add
        for c in component_masks(self.g, (old & ~rem) | add):
            self._insert(c)
        self.edges = edges_within(self.g, self.mask)

    # ------------------------------------------------------------ neighbourhood

    def _touched(self, v: int) -> int:
        out = 0
        for x in iter_bits(self.adj[v] & self.mask):
            out |= self.comp_of[x]
        return out

    def _tree_path(self, x: int, y: int, comp: int) -> int:
        if self.rooted:
            parent, depth = self.parent, self.depth
            path = 1 << x | 1 << y
            while x != y:
                if depth[x] >= depth[y]:
                    x = parent[x]
                else:
                    y = parent[y]
                path |= 1 << x | 1 << y
            return path
        layers = bfs_layers(self.g, x, comp)
        dist = next(i for i, layer in enumerate(layers) if layer >> y & 1)
        path = 1 << y
        cur = y
        for i in range(dist - 1, -1, -1):
            cur = lowest_bit(self.adj[cur] & layers[i])
            path |= 1 << cur
        return path

    def _single_pool(self, v: int) -> int:
        if self.full_radius:
            return self.mask
        adj, mask = self.adj, self.mask
        nb = adj[v] & mask
        pool = nb
        for x in iter_bits(nb):
            pool |= adj[x] & mask
        nbl = list(iter_bits(nb))
        for i, x in enumerate(nbl):
            for y in nbl[i + 1:]:
                if self.comp_of[x] == self.comp_of[y]:
                    pool |= self._tree_path(x, y, self.comp_of[x])
        return pool

    def _subsets(self, pool: int, lo: int, hi: int):
        members = list(iter_bits(pool))
        for r in range(lo, min(hi, len(members)) + 1):
            for combo in combinations(members, r):
                m = 0
                for x in combo:
                    m |= 1 << x
                yield m

    def find_move(self):
        adj, mask = self.adj, self.mask
        outside = [v for v in self.order if not mask >> v & 1]
        if self.full_radius:
            cands = outside
        else:
            cands = [v for v in outside if (adj[v] & mask).bit_count() <= 3]
        for v in cands:
            add = 1 << v
            for rem in self._subsets(self._single_pool(v), 0, self.v.max_remove(1)):
                obj = self.evaluate(rem, add)
                if obj is not None:
                    return rem, add, obj
        touched = {v: self._touched(v) for v in cands}
        for i, v in enumerate(cands):
            for w in cands[i + 1:]:
                if not self.full_radius and not touched[v] & touched[w]:
                    continue
                add = 1 << v | 1 << w
                pool = mask if self.full_radius else (adj[v] | adj[w]) & mask
                for rem in self._subsets(pool, 1, self.v.max_remove(2)):
                    obj = self.evaluate(rem, add)
                    if obj is not None:
                        return rem, add, obj
        return None


def _finalize(g: Graph, variant: LexVariant, eng: _Engine, log: list, converged: bool) -> SearchState:
    s = VertexSet(g.n, eng.mask)
    trees = [tree_stats_mask(g, c) for c in component_masks(g, eng.mask)]
    return SearchState(s, eng.obj, beta_counts(g, s), trees, log, converged, variant)


def search(
    g: Graph,
    variant: LexVariant,
    seed: VertexSet | None = None,
    max_moves: int | None = None,
    time_limit: float | None = None,
    full_radius: bool = False,
    order_seed: int | None = None,
    debug: bool = False,
    check_applicable: bool = True,
) -> SearchState:
    """Run first-improvement exchange search to a local optimum.

    Raises :class:`InvalidSeed` for an infeasible seed and :class:`Incomplete`
    (carrying the current state) when ``max_moves`` or ``time_limit`` is hit.
    """
    if check_applicable:
        variant.check_applicable(g)
    mask = _mask(g, seed) if seed is not None else 0
    if not variant.feasible(g, mask):
        raise InvalidSeed(f"seed does not induce a feasible set for {variant.name}")
    order = list(range(g.n))
    if order_seed is not None:
        random.Random(order_seed).shuffle(order)
    eng = _Engine(g, variant, mask, full_radius, order)
    log: list[Move] = []
    start = time.perf_counter()
    while True:
        found = eng.find_move()
        if found is None:
            return _finalize(g, variant, eng, log, True)
        rem, add, obj = found
        before = eng.obj
        eng.apply(rem, add)
        if obj is True:
            if not eng.obj > before:
                raise AssertionError("prefix-improving move did not improve the objective")
            obj = eng.obj
        elif eng.obj != obj:
            raise AssertionError("incremental objective disagrees with the evaluated move")
        log.append(Move(VertexSet(g.n, rem), VertexSet(g.n, add), before, obj))
        if debug and not variant.feasible(g, eng.mask):
            raise AssertionError("move produced an infeasible set")
        if len(log) % RECHECK_EVERY == 0 and variant.objective(g, eng.mask) != eng.obj:
            raise AssertionError("objective drifted from its recomputation")
        if max_moves is not None and len(log) >= max_moves:
            raise Incomplete(f"move cap {max_moves} reached", _finalize(g, variant, eng, log, False))
        if time_limit is not None and time.perf_counter() - start > time_limit:
            raise Incomplete(f"time limit {time_limit}s reached", _finalize(g, variant, eng, log, False))


def replay_moves(g: Graph, variant: LexVariant, seed: VertexSet | None, moves: list[Move]) -> VertexSet:
    """Re-apply ``moves``; each must keep feasibility and strictly raise the objective."""
    mask = _mask(g, seed) if seed is not None else 0
    obj = variant.objective(g, mask)
    for i, mv in enumerate(moves):
        if mv.remove.members & ~mask or mv.add.members & mask:
            raise ValueError(f"move {i} does not fit the current set")
        mask = (mask & ~mv.remove.members) | mv.add.members
        if not variant.feasible(g, mask):
            raise ValueError(f"move {i} breaks feasibility")
        new = variant.objective(g, mask)
        if not new > obj or new != mv.objective_after:
            raise ValueError(f"move {i} does not strictly improve as logged")
        obj = new
    return VertexSet(g.n, mask)
