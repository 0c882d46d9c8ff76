"""Immutable simple graphs on dense bit rows, plus the structural predicates
and counting quantities used throughout the package.

Vertices are ``0..n-1``. Row ``adj[v]`` is a Python ``int`` whose bit ``u`` is
set iff ``uv`` is an edge; every hot path is therefore an ``&`` followed by a
population count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import HostMismatch, InvalidEdge, NotAForest, VertexNotInSet


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """Simple undirected graph; immutable after construction."""

    __slots__ = ("n", "adj", "m", "degree", "_stats")

    def __init__(self, n: int, adj: Sequence[int]):
        if len(adj) != n:
            raise ValueError("adjacency must have exactly n rows")
        full = (1 << n) - 1
        rows = tuple(int(r) for r in adj)
        for v, row in enumerate(rows):
            if row & ~full:
                raise InvalidEdge(f"row {v} references a vertex outside 0..{n - 1}")
            if row >> v & 1:
                raise InvalidEdge(f"self-loop at {v}")
            for u in iter_bits(row):
                if not rows[u] >> v & 1:
                    raise InvalidEdge(f"asymmetric adjacency between {v} and {u}")
        set_ = object.__setattr__
        set_(self, "n", n)
        set_(self, "adj", rows)
        set_(self, "degree", tuple(r.bit_count() for r in rows))
        set_(self, "m", sum(self.degree) // 2)
        set_(self, "_stats", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph, (self.n, self.adj))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in iter_bits(self.adj[v] & ((1 << v) - 1))]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled in ascending order; also returns the
        list mapping new ids back to old ones."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            r = 0
            for u in iter_bits(self.adj[v]):
                i = index.get(u)
                if i is not None:
                    r |= 1 << i
            rows.append(r)
        return Graph(len(keep), rows), keep

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for u, v in self.edges():
            a, b = perm[u], perm[v]
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return Graph(self.n, rows)

    def stats(self) -> "GraphStats":
        if self._stats is None:
            object.__setattr__(self, "_stats", stats(self))
        return self._stats


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicate and reversed pairs collapse."""
    if n < 0:
        raise ValueError("n must be non-negative")
    rows = [0] * n
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise InvalidEdge(f"self-loop at {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows)


@dataclass(frozen=True)
class VertexSet:
    """Subset of the vertices of a host graph with ``host_n`` vertices."""

    host_n: int
    members: int = 0

    def __post_init__(self):
        if self.members < 0 or self.members >> self.host_n:
            raise ValueError("members outside 0..host_n-1")

    @classmethod
    def of(cls, host_n: int, vertices: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in vertices:
            if not 0 <= v < host_n:
                raise ValueError(f"vertex {v} outside 0..{host_n - 1}")
            mask |= 1 << v
        return cls(host_n, mask)

    @classmethod
    def full(cls, host_n: int) -> "VertexSet":
        return cls(host_n, (1 << host_n) - 1)

    def __len__(self):
        return self.members.bit_count()

    def __iter__(self):
        return iter_bits(self.members)

    def __contains__(self, v):
        return 0 <= v < self.host_n and bool(self.members >> v & 1)

    def _other(self, other: "VertexSet") -> int:
        if other.host_n != self.host_n:
            raise HostMismatch("vertex sets belong to different hosts")
        return other.members

    def __or__(self, other):
        return VertexSet(self.host_n, self.members | self._other(other))

    def __and__(self, other):
        return VertexSet(self.host_n, self.members & self._other(other))

    def __sub__(self, other):
        return VertexSet(self.host_n, self.members & ~self._other(other))

    def complement(self) -> "VertexSet":
        return VertexSet(self.host_n, ((1 << self.host_n) - 1) & ~self.members)

    def to_list(self) -> list[int]:
        return list(iter_bits(self.members))

    def __repr__(self):
        return f"VertexSet({self.host_n}, {self.to_list()})"


@dataclass(frozen=True)
class GraphStats:
    delta_max: int
    delta_min: int
    omega: int
    triangle_free: bool
    avg_degree: Fraction

    @property
    def is_regular(self) -> bool:
        return self.delta_max == self.delta_min


@dataclass(frozen=True)
class TreeStats:
    vertices: VertexSet
    edge_count: int
    max_degree: int
    diameter: int
    diameter_path_count: int


@dataclass(frozen=True)
class BetaCounts:
    """Outside vertices grouped by how many neighbours they have in ``S``."""

    counts: dict
    witnesses: dict

    def __getitem__(self, i: int) -> int:
        return self.counts.get(i, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def at_least(self, i: int) -> int:
        return sum(c for j, c in self.counts.items() if j >= i)

    def witness(self, i: int) -> int:
        """Bit mask of ``B_i`` (0 when empty)."""
        ws = self.witnesses.get(i)
        return ws.members if ws is not None else 0


def _mask(g: Graph, s) -> int:
    if isinstance(s, VertexSet):
        if s.host_n != g.n:
            raise HostMismatch(f"vertex set for n={s.host_n} used on graph with n={g.n}")
        return s.members
    return int(s)


# ---------------------------------------------------------------- primitives

def edges_within(g: Graph, mask: int) -> int:
    adj = g.adj
    return sum((adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2


def component_masks(g: Graph, mask: int) -> list[int]:
    """Connected components of ``G[mask]`` as bit masks, ordered by lowest vertex."""
    adj = g.adj
    comps = []
    rest = mask
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= adj[v]
            frontier = grow & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def is_forest_mask(g: Graph, mask: int) -> bool:
    return edges_within(g, mask) == mask.bit_count() - len(component_masks(g, mask))


def is_linear_forest_mask(g: Graph, mask: int, k: int | None) -> bool:
    adj = g.adj
    for v in iter_bits(mask):
        if (adj[v] & mask).bit_count() > 2:
            return False
    for comp in component_masks(g, mask):
        size = comp.bit_count()
        e = edges_within(g, comp)
        if e != size - 1:
            return False
        if k is not None and e > k:
            return False
    return True


def bfs_layers(g: Graph, source: int, mask: int) -> list[int]:
    """Distance layers from ``source`` inside ``G[mask]``."""
    adj = g.adj
    layers = [1 << source]
    seen = 1 << source
    frontier = seen
    while True:
        grow = 0
        for v in iter_bits(frontier):
            grow |= adj[v]
        frontier = grow & mask & ~seen
        if not frontier:
            return layers
        seen |= frontier
        layers.append(frontier)


def tree_stats_mask(g: Graph, tree: int) -> TreeStats:
    """Statistics of one tree given as a mask (caller guarantees acyclicity)."""
    adj = g.adj
    size = tree.bit_count()
    if size == 1:
        return TreeStats(VertexSet(g.n, tree), 0, 0, 0, 1)
    max_deg = max((adj[v] & tree).bit_count() for v in iter_bits(tree))
    start = lowest_bit(tree)
    a = lowest_bit(bfs_layers(g, start, tree)[-1])
    layers = bfs_layers(g, a, tree)
    diameter = len(layers) - 1
    # walk back from an end vertex b to recover one diametral path
    b = lowest_bit(layers[-1])
    path = [b]
    for layer in reversed(layers[:-1]):
        path.append(lowest_bit(adj[path[-1]] & layer))
    if diameter % 2 == 0:
        centre = path[diameter // 2]
        radius = diameter // 2
        per_branch = []
        for nb in iter_bits(adj[centre] & tree):
            branch_mask = tree & ~(1 << centre)
            blayers = bfs_layers(g, nb, branch_mask)
            per_branch.append(blayers[radius - 1].bit_count() if len(blayers) >= radius else 0)
        total = sum(per_branch)
        count = (total * total - sum(x * x for x in per_branch)) // 2
    else:
        c1, c2 = path[diameter // 2], path[diameter // 2 + 1]
        radius = diameter // 2
        side1 = bfs_layers(g, c1, tree & ~(1 << c2))
        side2 = bfs_layers(g, c2, tree & ~(1 << c1))
        count = side1[radius].bit_count() * side2[radius].bit_count()
    e = size - 1
    return TreeStats(VertexSet(g.n, tree), e, max_deg, diameter, count)


# ---------------------------------------------------------------- predicates

def is_triangle_free(g: Graph) -> bool:
    adj = g.adj
    for v in range(g.n):
        for u in iter_bits(adj[v] & ((1 << v) - 1)):
            if adj[u] & adj[v]:
                return False
    return True


def _colour_order(adj, cand: int) -> tuple[list[int], list[int]]:
    order: list[int] = []
    colours: list[int] = []
    colour = 0
    uncoloured = cand
    while uncoloured:
        colour += 1
        available = uncoloured
        while available:
            v = lowest_bit(available)
            available &= ~adj[v] & ~(1 << v)
            uncoloured &= ~(1 << v)
            order.append(v)
            colours.append(colour)
    return order, colours


def max_clique_in(g: Graph, cand: int, stop_at: int | None = None) -> int:
    """Size of a largest clique inside ``cand`` (greedy-colouring branch and
    bound). Stops early once a clique of size ``stop_at`` is found."""
    adj = g.adj
    best = 0

    def expand(size: int, cand: int) -> bool:
        nonlocal best
        if not cand:
            if size > best:
                best = size
            return stop_at is not None and best >= stop_at
        order, colours = _colour_order(adj, cand)
        for i in range(len(order) - 1, -1, -1):
            if size + colours[i] <= best:
                return False
            v = order[i]
            if expand(size + 1, cand & adj[v]):
                return True
            cand &= ~(1 << v)
        return False

    expand(0, cand)
    return best


def clique_number(g: Graph) -> int:
    return max_clique_in(g, g.full_mask)


def has_clique(g: Graph, q: int) -> bool:
    return max_clique_in(g, g.full_mask, stop_at=q) >= q


def stats(g: Graph) -> GraphStats:
    if g.n == 0:
        return GraphStats(0, 0, 0, True, Fraction(0))
    tf = is_triangle_free(g)
    omega = (1 if g.m == 0 else 2) if tf else clique_number(g)
    return GraphStats(
        delta_max=max(g.degree),
        delta_min=min(g.degree),
        omega=omega,
        triangle_free=tf,
        avg_degree=Fraction(2 * g.m, g.n),
    )


def induces_forest(g: Graph, s: VertexSet) -> bool:
    return is_forest_mask(g, _mask(g, s))


def induces_linear_k_forest(g: Graph, s: VertexSet, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    return is_linear_forest_mask(g, _mask(g, s), k)


def beta_counts(g: Graph, s: VertexSet) -> BetaCounts:
    mask = _mask(g, s)
    adj = g.adj
    counts: dict[int, int] = {}
    sets: dict[int, int] = {}
    for v in iter_bits(g.full_mask & ~mask):
        i = (adj[v] & mask).bit_count()
        counts[i] = counts.get(i, 0) + 1
        sets[i] = sets.get(i, 0) | 1 << v
    return BetaCounts(counts, {i: VertexSet(g.n, w) for i, w in sets.items()})


def tree_decomposition(g: Graph, s: VertexSet) -> list[TreeStats]:
    mask = _mask(g, s)
    if not is_forest_mask(g, mask):
        raise NotAForest("vertex set does not induce a forest")
    return [tree_stats_mask(g, c) for c in component_masks(g, mask)]


def outside_degree(g: Graph, s: VertexSet, v: int) -> int:
    mask = _mask(g, s)
    if not mask >> v & 1:
        raise VertexNotInSet(f"vertex {v} is not in the set")
    return g.degree[v] - (g.adj[v] & mask).bit_count()


def inside_degree(g: Graph, s: VertexSet, v: int) -> int:
    return (g.adj[v] & _mask(g, s)).bit_count()


# ---------------------------------------------------------------- certificates

@dataclass(frozen=True)
class ForestCertificate:
    """A vertex set together with the per-tree statistics that witness it
    induces a forest (``k is None``) or a linear ``k``-forest."""

    vertices: VertexSet
    trees: tuple
    k: int | None = None

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "vertices": self.vertices.to_list(),
            "k": self.k,
            "trees": [
                {
                    "vertices": t.vertices.to_list(),
                    "edges": t.edge_count,
                    "max_degree": t.max_degree,
                    "diameter": t.diameter,
                    "diameter_paths": t.diameter_path_count,
                }
                for t in self.trees
            ],
        }


def certify_forest(g: Graph, s: VertexSet, k: int | None = None) -> ForestCertificate:
    mask = _mask(g, s)
    ok = is_forest_mask(g, mask) if k is None else is_linear_forest_mask(g, mask, k)
    if not ok:
        kind = "forest" if k is None else f"linear {k}-forest"
        raise NotAForest(f"vertex set does not induce a {kind}")
    trees = tuple(tree_stats_mask(g, c) for c in component_masks(g, mask))
    return ForestCertificate(VertexSet(g.n, mask), trees, k)
