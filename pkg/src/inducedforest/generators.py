"""Deterministic graph generators.

Every family draws from ``numpy.random.default_rng(seed)`` and post-checks
its defining predicate; failed draws are resampled a bounded number of times
before :class:`GenerationFailed` is raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

from .errors import GenerationFailed
from .graph import Graph, graph_from_edges, has_clique, is_triangle_free, iter_bits

FAMILIES = (
    "gnp",
    "random_regular",
    "bipartite_random",
    "triangle_free_rejection",
    "kq_free_greedy",
    "named",
    "exhaustive_small",
)
MAX_RETRIES = 200


@dataclass
class GeneratorSpec:
    family: str
    n: int = 0
    seed: int = 0
    count: int = 1
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")


def _pairs(n: int) -> np.ndarray:
    iu = np.triu_indices(n, 1)
    return np.stack(iu, axis=1)


def gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    pairs = _pairs(n)
    keep = rng.random(len(pairs)) < p
    return graph_from_edges(n, map(tuple, pairs[keep].tolist()))


def random_regular(n: int, d: int, rng: np.random.Generator, triangle_free: bool = False) -> Graph:
    """Uniform-ish ``d``-regular graph by random stub pairing with restarts.

    Stubs are paired one at a time, choosing only among partners that keep
    the graph simple (and triangle-free when asked); a dead end restarts the
    pairing.
    """
    if d < 0 or d >= max(n, 1) and n > 0 or (n * d) % 2:
        raise GenerationFailed(f"no {d}-regular graph on {n} vertices")
    for _ in range(MAX_RETRIES):
        rows = [0] * n
        free = [d] * n
        ok = True
        for _ in range(n * d // 2):
            open_ = np.flatnonzero(np.array(free) > 0)
            u = int(open_[rng.integers(len(open_))])
            cands = [
                v for v in open_.tolist()
                if v != u and not rows[u] >> v & 1 and not (triangle_free and rows[u] & rows[v])
            ]
            if not cands:
                ok = False
                break
            weights = np.array([free[v] for v in cands], dtype=float)
            v = int(cands[rng.choice(len(cands), p=weights / weights.sum())])
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            free[u] -= 1
            free[v] -= 1
        if ok:
            return Graph(n, rows)
    raise GenerationFailed(f"could not pair stubs for a {d}-regular graph on {n} vertices")


def bipartite_random(n: int, p: float, rng: np.random.Generator) -> Graph:
    a = n // 2
    left, right = np.meshgrid(np.arange(a), np.arange(a, n), indexing="ij")
    keep = rng.random(left.shape) < p
    return graph_from_edges(n, zip(left[keep].tolist(), right[keep].tolist()))


def triangle_free_rejection(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Visit pairs in random order; keep each with probability ``p`` unless it closes a triangle."""
    pairs = _pairs(n)[rng.permutation(n * (n - 1) // 2)] if n > 1 else np.empty((0, 2), int)
    coins = rng.random(len(pairs)) < p
    rows = [0] * n
    for (u, v), coin in zip(pairs.tolist(), coins.tolist()):
        if coin and not rows[u] & rows[v]:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, rows)


def _has_clique_in(rows, cand: int, size: int) -> bool:
    if size <= 0:
        return True
    if cand.bit_count() < size:
        return False
    for v in iter_bits(cand):
        cand &= ~(1 << v)
        if _has_clique_in(rows, cand & rows[v], size - 1):
            return True
    return False


def kq_free_greedy(n: int, q: int, target_m: int, rng: np.random.Generator) -> Graph:
    """Add random edges that create no ``K_q`` until ``target_m`` edges exist."""
    for _ in range(MAX_RETRIES):
        order = _pairs(n)[rng.permutation(n * (n - 1) // 2)]
        rows = [0] * n
        m = 0
        for u, v in order.tolist():
            if m == target_m:
                break
            if not _has_clique_in(rows, rows[u] & rows[v], q - 2):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                m += 1
        if m == target_m:
            return Graph(n, rows)
    raise GenerationFailed(f"could not reach {target_m} edges without a K{q}")


# ---------------------------------------------------------------- catalog

def complete(n: int) -> Graph:
    return graph_from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return graph_from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def cycle(n: int) -> Graph:
    return graph_from_edges(n, ((i, (i + 1) % n) for i in range(n)) if n >= 3 else ())


def path(n: int) -> Graph:
    return graph_from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star(k: int) -> Graph:
    return graph_from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return graph_from_edges(10, outer + spokes + inner)


def k55_minus_pm() -> Graph:
    """``K_{5,5}`` without the matching ``{a_i b_i}``: 4-regular, triangle-free."""
    return graph_from_edges(10, ((i, 5 + j) for i in range(5) for j in range(5) if i != j))


def named(ident: str) -> Graph:
    """``petersen``, ``k55_minus_pm``, ``complete:n``, ``complete_bipartite:a,b``,
    ``cycle:n``, ``path:n`` or ``star:k``."""
    name, _, arg = ident.partition(":")
    nums = [int(x) for x in arg.split(",")] if arg else []
    table = {
        "petersen": (petersen, 0),
        "k55_minus_pm": (k55_minus_pm, 0),
        "complete": (complete, 1),
        "complete_bipartite": (complete_bipartite, 2),
        "cycle": (cycle, 1),
        "path": (path, 1),
        "star": (star, 1),
    }
    if name not in table or len(nums) != table[name][1]:
        raise ValueError(f"unknown catalog entry {ident!r}")
    return table[name][0](*nums)


# ---------------------------------------------------------------- exhaustive

def _refine(rows, n) -> list[int]:
    colour = [rows[v].bit_count() for v in range(n)]
    while True:
        sig = [(colour[v], tuple(sorted(colour[u] for u in iter_bits(rows[v])))) for v in range(n)]
        index = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [index[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def canonical_code(g: Graph) -> tuple[int, int]:
    """Isomorphism-invariant key: the largest upper-triangle code over all
    orderings compatible with colour refinement."""
    n, rows = g.n, g.adj
    colour = _refine(rows, n)
    classes = [[v for v in range(n) if colour[v] == c] for c in sorted(set(colour))]
    best = -1
    for parts in product(*(permutations(c) for c in classes)):
        order = [v for part in parts for v in part]
        code = 0
        for j in range(1, n):
            rj = rows[order[j]]
            for i in range(j):
                code = code << 1 | (rj >> order[i] & 1)
        if code > best:
            best = code
    return n, best


def exhaustive_small(n: int, triangle_free: bool = False) -> list[Graph]:
    """All graphs on ``n`` vertices up to isomorphism (``n <= 8``), built by
    adding one vertex at a time and keeping one representative per class."""
    if not 0 <= n <= 8:
        raise ValueError("exhaustive enumeration supports 0 <= n <= 8")
    level = {canonical_code(Graph(0, [])): Graph(0, [])}
    for size in range(1, n + 1):
        nxt = {}
        for g in level.values():
            for nb in range(1 << (size - 1)):
                if triangle_free and any(g.adj[u] & nb for u in iter_bits(nb)):
                    continue
                rows = [r | ((nb >> v & 1) << (size - 1)) for v, r in enumerate(g.adj)] + [nb]
                h = Graph(size, rows)
                nxt.setdefault(canonical_code(h), h)
        level = nxt
    return [level[k] for k in sorted(level)]


def all_labeled(n: int):
    """Every labelled graph on ``n`` vertices (``2**C(n,2)`` of them)."""
    pairs = [(u, v) for v in range(n) for u in range(v)]
    for bits in range(1 << len(pairs)):
        rows = [0] * n
        for k, (u, v) in enumerate(pairs):
            if bits >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        yield Graph(n, rows)


# ---------------------------------------------------------------- dispatch

def _flag(value) -> bool:
    if isinstance(value, str):
        return value.strip().lower() in ("1", "true", "yes", "on")
    return bool(value)


def _check(spec: GeneratorSpec, g: Graph) -> bool:
    f, p = spec.family, spec.params
    if f in ("bipartite_random", "triangle_free_rejection"):
        return is_triangle_free(g)
    if f == "random_regular":
        return len(set(g.degree)) <= 1 and (not p.get("triangle_free") or is_triangle_free(g))
    if f == "kq_free_greedy":
        return not has_clique(g, int(p["q"]))
    return True


def generate(spec: GeneratorSpec) -> list[Graph]:
    f, p, n = spec.family, spec.params, spec.n
    if f == "named":
        return [named(str(p["id"]))]
    if f == "exhaustive_small":
        return exhaustive_small(n, _flag(p.get("triangle_free", False)))
    rng = np.random.default_rng(spec.seed)
    out = []
    for _ in range(spec.count):
        for _ in range(MAX_RETRIES):
            if f == "gnp":
                g = gnp(n, float(p["p"]), rng)
            elif f == "random_regular":
                g = random_regular(n, int(p["d"]), rng, _flag(p.get("triangle_free", False)))
            elif f == "bipartite_random":
                g = bipartite_random(n, float(p["p"]), rng)
            elif f == "triangle_free_rejection":
                g = triangle_free_rejection(n, float(p["p"]), rng)
            else:
                g = kq_free_greedy(n, int(p["q"]), int(p["target_m"]), rng)
            if _check(spec, g):
                break
        else:
            raise GenerationFailed(f"{f} predicate not met after {MAX_RETRIES} draws")
        out.append(g)
    return out
