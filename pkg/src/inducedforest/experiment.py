"""Experiment runner: bounds versus constructions versus the exact oracle.

A config is an INI file with one ``[experiment]`` section and any number of
``[family <label>]`` sections::

    [experiment]
    exact_cap = 24
    workers = 2
    methods = tf k4 kq a3 pipeline
    json = results.json
    csv = results.csv

    [family quartic]
    family = random_regular
    n = 10
    count = 20
    seed = 3
    d = 4
    triangle_free = true

Every graph yields a handful of flat rows (one per bound entry, method and
exact target) sharing a fixed column set, so the CSV and JSON outputs carry
the same cells. Runtimes are left out unless ``runtimes = true``; without
them the output is a pure function of the config.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .bounds import PotentialKind, closed_form_bounds, potential_sum
from .certificates import certify, counting_bound
from .constructive import construct_triangle_free_forest
from .errors import BaseCaseShortfall, Incomplete
from .exact import solve_target
from .generators import FAMILIES, GeneratorSpec, generate
from .graph import Graph, has_clique
from .graph_io import serialize_graph6
from .pipeline import clique_degree_pipeline
from .regularize import extract_best_copy, regularize
from .search import LexVariant, search

METHODS = ("tf", "k4", "kq", "a3", "pipeline")
COLUMNS = (
    "graph", "family", "graph6", "n", "m", "delta_max", "delta_min", "omega", "triangle_free",
    "row", "name", "target", "value", "ceil", "applicable", "guaranteed",
    "size", "exact", "slack", "exact_slack", "ok", "ms",
)


@dataclass
class FamilyBlock:
    label: str
    spec: GeneratorSpec
    ids: tuple = ()


@dataclass
class ExperimentConfig:
    families: list = field(default_factory=list)
    exact_cap: int = 24
    exact_budget: int | None = 2_000_000
    workers: int = 1
    methods: tuple = METHODS
    regularize: bool = True
    max_regularized: int = 4096
    runtimes: bool = False
    json_path: Path | None = None
    csv_path: Path | None = None

    @classmethod
    def from_text(cls, text: str, base: Path | None = None) -> "ExperimentConfig":
        cp = configparser.ConfigParser()
        cp.read_string(text)
        cfg = cls()
        if cp.has_section("experiment"):
            ex = cp["experiment"]
            cfg.exact_cap = ex.getint("exact_cap", cfg.exact_cap)
            budget = ex.get("exact_budget", str(cfg.exact_budget))
            cfg.exact_budget = None if budget.lower() == "none" else int(budget)
            cfg.workers = ex.getint("workers", cfg.workers)
            cfg.methods = tuple(ex.get("methods", " ".join(METHODS)).replace(",", " ").split())
            unknown = set(cfg.methods) - set(METHODS)
            if unknown:
                raise ValueError(f"unknown methods {sorted(unknown)}")
            cfg.regularize = ex.getboolean("regularize", cfg.regularize)
            cfg.max_regularized = ex.getint("max_regularized", cfg.max_regularized)
            cfg.runtimes = ex.getboolean("runtimes", cfg.runtimes)
            base = base or Path.cwd()
            if ex.get("json"):
                cfg.json_path = base / ex["json"]
            if ex.get("csv"):
                cfg.csv_path = base / ex["csv"]
        for name in cp.sections():
            if not name.startswith("family "):
                continue
            sec = dict(cp[name])
            label = name[len("family "):].strip()
            family = sec.pop("family")
            if family not in FAMILIES:
                raise ValueError(f"unknown family {family!r} in [{name}]")
            n = int(sec.pop("n", 0))
            seed = int(sec.pop("seed", 0))
            count = int(sec.pop("count", 1))
            ids = tuple(sec.pop("ids", "").split())
            cfg.families.append(FamilyBlock(label, GeneratorSpec(family, n, seed, count, sec), ids))
        if not cfg.families:
            raise ValueError("config defines no [family ...] section")
        return cfg

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        path = Path(path)
        return cls.from_text(path.read_text(), path.parent)


@dataclass
class MethodResult:
    name: str
    target: str
    size: int | None
    floor: Fraction | None
    guaranteed: bool
    certificates_passed: bool | None = None
    copies: int = 1
    error: str | None = None
    ms: float | None = None

    @property
    def floor_met(self) -> bool | None:
        if self.floor is None or self.size is None:
            return None
        return self.size >= math.ceil(self.floor)

    @property
    def ok(self) -> bool:
        if not self.guaranteed:
            return True
        return self.error is None and bool(self.floor_met) and self.certificates_passed is not False


@dataclass
class ExperimentRecord:
    graph_label: str
    family: str
    graph: Graph
    report: object
    methods: list = field(default_factory=list)
    exact: dict = field(default_factory=dict)  # target -> optimum or None
    exact_ms: dict = field(default_factory=dict)

    def best_size(self, target: str) -> int | None:
        """Largest constructed set that is feasible for ``target``."""
        sizes = [mr.size for mr in self.methods if mr.size is not None and _serves(mr.target, target)]
        return max(sizes) if sizes else None

    def rows(self) -> list[dict]:
        st = self.report.stats
        base = {
            "graph": self.graph_label,
            "family": self.family,
            "graph6": serialize_graph6(self.graph).decode(),
            "n": self.graph.n,
            "m": self.graph.m,
            "delta_max": st.delta_max,
            "delta_min": st.delta_min,
            "omega": st.omega,
            "triangle_free": st.triangle_free,
        }
        out = []
        for e in self.report.entries:
            size = self.best_size(e.target) if e.applicable else None
            ex = self.exact.get(e.target) if e.applicable else None
            out.append(_row(
                base, "bound", e.id, e.target, _frac(e.value), e.ceil, e.applicable, None,
                size, ex, _diff(size, e.ceil), _diff(ex, e.ceil),
                ex is None or ex >= e.ceil if e.applicable else True, None,
            ))
        for mr in self.methods:
            ceil = math.ceil(mr.floor) if mr.floor is not None else None
            ex = self.exact.get(mr.target)
            out.append(_row(
                base, "method", mr.name, mr.target, _frac(mr.floor), ceil, mr.error is None, mr.guaranteed,
                mr.size, ex, _diff(mr.size, ceil), _diff(ex, ceil), mr.ok, mr.ms,
            ))
        for target, opt in self.exact.items():
            out.append(_row(
                base, "exact", target, target, None, None, True, None,
                opt, opt, None, None, opt is not None, self.exact_ms.get(target),
            ))
        return out


def _serves(have: str, want: str) -> bool:
    # a linear k-forest is a linear k'-forest for k' >= k and always a forest
    if want == "a":
        return True
    if have == "a":
        return False
    return int(have[1:]) <= int(want[1:])


def _frac(x: Fraction | None) -> str | None:
    if x is None:
        return None
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _diff(a, b):
    return None if a is None or b is None else a - b


def _row(base, kind, name, target, value, ceil, applicable, guaranteed, size, exact, slack, exact_slack, ok, ms):
    row = dict(base)
    row.update(
        row=kind, name=name, target=target, value=value, ceil=ceil, applicable=applicable,
        guaranteed=guaranteed, size=size, exact=exact, slack=slack, exact_slack=exact_slack,
        ok=bool(ok), ms=ms,
    )
    return row


# ---------------------------------------------------------------- per graph

def _variant_floor(variant: LexVariant, g: Graph) -> Fraction | None:
    delta = max(g.degree) if g.n else 0
    if delta == 0:
        return None
    n = g.n
    if variant.kind == "K4":
        return Fraction(6 * n, 2 * delta + 5)
    if variant.kind == "Kq":
        return Fraction(6 * n, 2 * delta + variant.q + 1)
    return Fraction(2 * n, delta + 1)


def _run_variant(g: Graph, variant: LexVariant, cfg: ExperimentConfig) -> MethodResult:
    floor = _variant_floor(variant, g)
    target = "a" if variant.linear_k is None else f"a{variant.linear_k}"
    regular = len(set(g.degree)) <= 1
    reg = None
    host = g
    if not regular and cfg.regularize and g.m:
        gap = max(g.degree) - min(g.degree)
        if g.n << gap <= cfg.max_regularized:
            reg = regularize(g, cfg.max_regularized)
            host = reg.g_prime
    guaranteed = floor is not None and (regular or reg is not None)
    state = search(host, variant, check_applicable=False)
    certs = certify(host, state, variant)
    cb = counting_bound(host, state, variant)
    if reg is not None:
        _, proj = extract_best_copy(reg, state.s, variant.linear_k)
        size = len(proj)
    else:
        size = state.size
    name = variant.name.lower()
    return MethodResult(name, target, size, floor, guaranteed, certs.passed and cb.holds, reg.copies if reg else 1)


def _timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, round((time.perf_counter() - start) * 1000, 3)


def evaluate_graph(label: str, family: str, g: Graph, cfg: ExperimentConfig) -> ExperimentRecord:
    report = closed_form_bounds(g, label)
    rec = ExperimentRecord(label, family, g, report)
    st = report.stats
    for method in cfg.methods:
        try:
            if method == "tf":
                if not st.triangle_free:
                    continue
                (cert, _), ms = _timed(construct_triangle_free_forest, g)
                floor = potential_sum(g, PotentialKind.TRIANGLE_FREE)
                mr = MethodResult("tf", "a", len(cert.vertices), floor, True)
            elif method == "pipeline":
                if g.m == 0:
                    continue
                gap = st.delta_max - st.delta_min
                if st.omega >= 3 and g.n << gap > cfg.max_regularized:
                    continue
                res, ms = _timed(clique_degree_pipeline, g, None, cfg.max_regularized)
                mr = MethodResult("pipeline", "a", res.size, res.floor, True, res.certificates_passed, res.copies)
            else:
                if method == "k4":
                    if has_clique(g, 4):
                        continue
                    variant = LexVariant.k4()
                elif method == "kq":
                    variant = LexVariant.kq(max(5, st.omega + 1))
                else:
                    variant = LexVariant.a3()
                mr, ms = _timed(_run_variant, g, variant, cfg)
        except BaseCaseShortfall as exc:
            mr, ms = MethodResult(method, "a", None, None, True, error=str(exc)), None
        mr.ms = ms if cfg.runtimes else None
        rec.methods.append(mr)
    if g.n <= cfg.exact_cap:
        targets = ["a", "a3", "a4"]
        for e in report.entries:
            if e.applicable and e.target not in targets:
                targets.append(e.target)
        for t in targets:
            try:
                res, ms = _timed(solve_target, g, t, cfg.exact_budget)
                rec.exact[t] = res.optimum
            except Incomplete:
                rec.exact[t], ms = None, None
            if cfg.runtimes:
                rec.exact_ms[t] = ms
    return rec


# ---------------------------------------------------------------- driver

@dataclass
class ExperimentResult:
    records: list
    rows: list
    summary: dict

    @property
    def passed(self) -> bool:
        return not self.summary["violations"]

    def to_json(self) -> str:
        return json.dumps({"summary": self.summary, "records": self.rows}, indent=2) + "\n"

    def to_csv(self) -> str:
        return rows_to_csv(self.rows)


def csv_cell(value) -> str:
    """How a JSON row value is written to CSV."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([csv_cell(r[c]) for c in COLUMNS])
    return buf.getvalue()


def expand(cfg: ExperimentConfig) -> list[tuple[str, str, Graph]]:
    items = []
    for fam in cfg.families:
        spec = fam.spec
        if spec.family == "named":
            ids = fam.ids or (str(spec.params["id"]),)
            for ident in ids:
                g = generate(GeneratorSpec("named", 0, 0, 1, {"id": ident}))[0]
                items.append((ident, fam.label, g))
            continue
        for i, g in enumerate(generate(spec)):
            items.append((f"{fam.label}#{i}", fam.label, g))
    return items


def _task(args):
    label, family, g, cfg = args
    return evaluate_graph(label, family, g, cfg)


def summarize(records: list) -> dict:
    bounds: dict = {}
    methods: dict = {}
    violations = []
    for rec in records:
        for row in rec.rows():
            if row["row"] == "bound" and row["applicable"]:
                b = bounds.setdefault(row["name"], {"applicable": 0, "min_slack": None, "min_exact_slack": None, "tight": 0})
                b["applicable"] += 1
                for key, val in (("min_slack", row["slack"]), ("min_exact_slack", row["exact_slack"])):
                    if val is not None and (b[key] is None or val < b[key]):
                        b[key] = val
                if row["exact_slack"] == 0:
                    b["tight"] += 1
            elif row["row"] == "method":
                m = methods.setdefault(row["name"], {"runs": 0, "guaranteed": 0, "floor_misses": 0, "min_slack": None})
                m["runs"] += 1
                if row["guaranteed"]:
                    m["guaranteed"] += 1
                    if not row["ok"]:
                        m["floor_misses"] += 1
                if row["slack"] is not None and (m["min_slack"] is None or row["slack"] < m["min_slack"]):
                    m["min_slack"] = row["slack"]
            if not row["ok"] and row["row"] != "exact":
                violations.append({"graph": row["graph"], "row": row["row"], "name": row["name"]})
    incomplete = sum(1 for rec in records for v in rec.exact.values() if v is None)
    return {
        "graphs": len(records),
        "violations": violations,
        "exact_incomplete": incomplete,
        "bounds": bounds,
        "methods": methods,
    }


def run_experiment(config: ExperimentConfig | str | Path, write: bool = True) -> ExperimentResult:
    """Evaluate every graph of every family; results keep input order.

    With ``workers > 1`` graphs are farmed out to a process pool; each task
    is deterministic, so the output does not depend on the pool width.
    """
    cfg = config if isinstance(config, ExperimentConfig) else ExperimentConfig.load(config)
    items = [(label, fam, g, cfg) for label, fam, g in expand(cfg)]
    if cfg.workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(_task, items, chunksize=1))
    else:
        records = [_task(it) for it in items]
    rows = [row for rec in records for row in rec.rows()]
    result = ExperimentResult(records, rows, summarize(records))
    if write:
        if cfg.json_path is not None:
            cfg.json_path.write_text(result.to_json())
        if cfg.csv_path is not None:
            cfg.csv_path.write_text(result.to_csv())
    return result


__all__ = [
    "COLUMNS",
    "ExperimentConfig",
    "ExperimentRecord",
    "ExperimentResult",
    "FamilyBlock",
    "MethodResult",
    "csv_cell",
    "evaluate_graph",
    "expand",
    "rows_to_csv",
    "run_experiment",
    "summarize",
]
