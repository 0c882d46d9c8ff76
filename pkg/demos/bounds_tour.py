"""
A tour of the lower bounds
==========================

Evaluate every closed-form bound on a handful of small graphs and compare
with the exact optimum.
"""

from inducedforest import closed_form_bounds
from inducedforest.exact import solve_target
from inducedforest.generators import complete, cycle, k55_minus_pm, petersen

graphs = {
    "K7": complete(7),
    "C5": cycle(5),
    "Petersen": petersen(),
    "K5,5 - PM": k55_minus_pm(),
}

for name, g in graphs.items():
    report = closed_form_bounds(g, name)
    print(f"\n{name}: n={g.n} m={g.m}")
    optimum = {}
    for e in report.entries:
        if not e.applicable:
            continue
        if e.target not in optimum:
            optimum[e.target] = solve_target(g, e.target).optimum
        # slack is how far the exact optimum sits above the rounded bound
        print(f"  {e.id:22s} {str(e.value):>8s}  ceil {e.ceil}  {e.target} = {optimum[e.target]}"
              f"  slack {optimum[e.target] - e.ceil}")

# Cliques are where the clique-degree bound 6n/(2D + w + 2) is sharp.
for n in range(2, 9):
    e = closed_form_bounds(complete(n)).get("clique_degree")
    print(f"K{n}: bound {e.value}")
