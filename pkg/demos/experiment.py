"""
Running an experiment
=====================

A config names graph families; every graph gets bounds, constructions and,
when small enough, exact optima. Results come back as records and flat rows.
"""

from inducedforest import ExperimentConfig, run_experiment

CONFIG = """
[experiment]
exact_cap = 20
methods = tf pipeline k4 a3

[family cubic]
family = random_regular
n = 16
d = 3
seed = 1
count = 3

[family sparse]
family = triangle_free_rejection
n = 18
p = 0.2
seed = 2
count = 3

[family catalog]
family = named
ids = petersen k55_minus_pm complete:6
"""

cfg = ExperimentConfig.from_text(CONFIG)
result = run_experiment(cfg, write=False)

summary = result.summary
print(f"{summary['graphs']} graphs, {len(summary['violations'])} violations")
for method, stats in summary["methods"].items():
    print(f"  {method:9s} {stats}")

# best guaranteed forest per graph, next to the exact value
for rec in result.records:
    print(f"{rec.graph_label:14s} n={rec.graph.n:3d} best {rec.best_size('a')}  exact {rec.exact.get('a')}")

print(result.to_csv().splitlines()[0])
