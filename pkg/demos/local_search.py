"""
Exchange search and its certificates
====================================

Run the K4 variant on a random 4-regular K4-free graph, then check the
structural facts a local optimum must satisfy and the counting argument
that turns them into a size floor.
"""

import math
from fractions import Fraction

import numpy as np

from inducedforest import LexVariant, certify, counting_bound, search
from inducedforest.generators import random_regular
from inducedforest.graph import has_clique

rng = np.random.default_rng(3)
while True:
    g = random_regular(36, 4, rng)
    if not has_clique(g, 4):
        break

variant = LexVariant.k4()
state = search(g, variant)
floor = Fraction(6 * g.n, 2 * 4 + 5)
print(f"|S| = {state.size} after {len(state.move_log)} moves, floor ceil({floor}) = {math.ceil(floor)}")
print("objective", state.objective_vector)

certs = certify(g, state, variant)
for check in certs.checks:
    print(f"  {check.name:28s} {'ok' if check.passed else 'FAILED'}")

cb = counting_bound(g, state, variant)
print("counting bound:", cb.to_dict())

# The same search in full radius may still find lexicographic gains the
# local move class skips; the size floor does not depend on them.
wide = search(g, variant, seed=state.s, full_radius=True)
print(f"full radius: {len(wide.move_log)} further moves, |S| = {wide.size}")

# A3: linear 3-forests in regular graphs, floor 2n/(D+1)
a3 = search(g, LexVariant.a3())
print(f"A3: |S| = {a3.size}, floor {math.ceil(Fraction(2 * g.n, 5))}")
