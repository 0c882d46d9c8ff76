"""
From irregular to regular
=========================

Non-regular graphs are embedded in a regular graph made of copies joined by
twin edges. Searching there and keeping the best copy gives the
clique-degree bound on the original graph.
"""

import numpy as np

from inducedforest import clique_degree_pipeline, extract_best_copy, regularize
from inducedforest.generators import gnp

rng = np.random.default_rng(11)
while True:
    g = gnp(14, 0.35, rng)
    if g.m and max(g.degree) - min(g.degree) <= 3 and len(set(g.degree)) > 1:
        break
print(f"n={g.n} degrees {sorted(g.degree)}")

reg = regularize(g)
gp = reg.g_prime
print(f"regularized: {reg.copies} copies, {gp.n} vertices, degrees {set(gp.degree)}")

result = clique_degree_pipeline(g)
print(f"method {result.method}, forest of {result.size}, floor {result.floor} (met: {result.floor_met})")
print("invariants:", vars(result.invariants))
print("detail:", result.detail)
