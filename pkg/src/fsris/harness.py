"""Seeded Monte-Carlo experiment runner.

Each realization derives its own random stream from (seed, realization
index), so results are independent of worker count and scheduling. Sweep
results are aggregated into records and emitted as CSV or JSON.
"""

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import channel, metrics, ris, selection
from .config import ScenarioConfig, paper_defaults

CSV_HEADER = ["method", "K", "N", "sel_size", "realizations", "finite_count",
              "inf_count", "mean_si_db", "std_si_db", "mean_rate_bps",
              "mean_coh_rate_bps", "mean_rel_rate_pct", "std_rel_rate_pct",
              "seed"]

METHODS = {
    "adjacent": selection.adjacent,
    "fixed_adjacent": selection.fixed_adjacent,
    "random": selection.random_nonconsecutive,
}


@dataclass(frozen=True)
class ExperimentSpec:
    base: ScenarioConfig
    methods: tuple = ("adjacent",)
    sel_sizes: tuple = (1,)
    ris_sizes: tuple = ()       # N values for the RIS-size sweep
    realizations: int = 100
    workers: int = 1

    def __post_init__(self):
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        if not self.methods or not self.sel_sizes:
            raise ValueError("methods and sel_sizes must be non-empty")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown selection method {m!r}")


@dataclass(frozen=True)
class AggregateRecord:
    method: str
    K: int
    N: int
    sel_size: int
    realizations: int
    finite_count: int
    inf_count: int
    mean_si_db: float   # nan when every sample was infinite
    std_si_db: float
    mean_rate_bps: float
    mean_coh_rate_bps: float
    mean_rel_rate_pct: float
    std_rel_rate_pct: float
    seed: int


def realization_rng(seed, index):
    """Independent, reproducible stream for one realization."""
    return np.random.default_rng([seed, index])


def run_realization(cfg, method, sel_size, realization_index):
    """One end-to-end draw: channel, selection, RIS program, metrics.

    The channel is drawn before the selection so different methods and
    sizes share channel realizations at equal (seed, index)."""
    rng = realization_rng(cfg.seed, realization_index)
    real = channel.realize_channel(rng, cfg)
    sel = METHODS[method](rng, sel_size, cfg.K)
    program = ris.synthesize_program(sel, cfg.K, cfg.num_reflectors)
    h_c = ris.composite_response(real.V, program)
    return metrics.relative_rate(real, h_c, sel, cfg)


def _aggregate(cfg, method, sel_size, results):
    si = np.array([m.s_over_i for m in results])
    finite = np.isfinite(si)
    n_inf = int(np.count_nonzero(~finite))
    if np.any(finite):
        mean_si_db = 10.0 * math.log10(float(np.mean(si[finite])))
        std_si_db = float(np.std(10.0 * np.log10(np.maximum(si[finite], 1e-300))))
    else:
        mean_si_db = math.nan
        std_si_db = math.nan
    rel = np.array([m.relative_rate for m in results])
    return AggregateRecord(
        method=method, K=cfg.K, N=cfg.num_reflectors, sel_size=sel_size,
        realizations=len(results), finite_count=int(np.count_nonzero(finite)),
        inf_count=n_inf, mean_si_db=mean_si_db, std_si_db=std_si_db,
        mean_rate_bps=float(np.mean([m.rate for m in results])),
        mean_coh_rate_bps=float(np.mean([m.coherent_rate for m in results])),
        mean_rel_rate_pct=float(np.nanmean(rel)),
        std_rel_rate_pct=float(np.nanstd(rel)),
        seed=cfg.seed)


def _run_point(args):
    cfg, method, sel_size, realizations = args
    return [run_realization(cfg, method, sel_size, i) for i in range(realizations)]


def _run_points(points, workers):
    if workers <= 1:
        return [_run_point(p) for p in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_point, points))


def run_point(spec, cfg, method, sel_size):
    results = _run_point((cfg, method, sel_size, spec.realizations))
    return _aggregate(cfg, method, sel_size, results)


def _factor_near_square(n):
    """Largest divisor pair (rows, cols) with rows <= sqrt(n)."""
    r = int(math.isqrt(n))
    while n % r:
        r -= 1
    return r, n // r


def sweep_ris_size(spec):
    """One record per (N, sel_size, method); the RIS is kept as square as
    the reflector count allows."""
    if not spec.ris_sizes:
        raise ValueError("ris_sizes must be non-empty for a RIS-size sweep")
    points, keys = [], []
    for n_elems in spec.ris_sizes:
        rows, cols = _factor_near_square(n_elems)
        cfg = replace(spec.base, n_row=rows, n_col=cols)
        for size in spec.sel_sizes:
            for method in spec.methods:
                points.append((cfg, method, size, spec.realizations))
                keys.append((cfg, method, size))
    batches = _run_points(points, spec.workers)
    return [_aggregate(cfg, m, s, res) for (cfg, m, s), res in zip(keys, batches)]


def sweep_selection_size(spec):
    """One record per (sel_size, method) at the base RIS size."""
    points, keys = [], []
    for size in spec.sel_sizes:
        for method in spec.methods:
            points.append((spec.base, method, size, spec.realizations))
            keys.append((spec.base, method, size))
    batches = _run_points(points, spec.workers)
    return [_aggregate(cfg, m, s, res) for (cfg, m, s), res in zip(keys, batches)]


def _fmt(x):
    if isinstance(x, float):
        return "" if math.isnan(x) else f"{x:.9g}"
    return str(x)


def records_to_csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow([_fmt(getattr(rec, col)) for col in CSV_HEADER])
    return buf.getvalue()


def records_to_json(records):
    rows = []
    for rec in records:
        row = {}
        for col in CSV_HEADER:
            val = getattr(rec, col)
            row[col] = None if isinstance(val, float) and math.isnan(val) else val
        rows.append(row)
    return json.dumps(rows, indent=2) + "\n"


def emit(records, fmt, path):
    """Write records as CSV or JSON; CSV floats carry 9 significant digits."""
    if not records:
        raise ValueError("no records to emit")
    if fmt == "csv":
        text = records_to_csv(records)
    elif fmt == "json":
        text = records_to_json(records)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def parse_csv(text):
    """Round-trip parse of an emitted CSV back into AggregateRecords."""
    rows = list(csv.reader(io.StringIO(text)))
    if rows[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {rows[0]!r}")
    records = []
    int_cols = {"K", "N", "sel_size", "realizations", "finite_count",
                "inf_count", "seed"}
    for row in rows[1:]:
        kwargs = {}
        for col, cell in zip(CSV_HEADER, row):
            if col == "method":
                kwargs[col] = cell
            elif col in int_cols:
                kwargs[col] = int(cell)
            else:
                kwargs[col] = math.nan if cell == "" else float(cell)
        records.append(AggregateRecord(**kwargs))
    return records


def selftest(verbose=True):
    """Cross-module invariant suite at desk scale; returns (ok, lines)."""
    checks = []
    rng = np.random.default_rng(1234)
    cfg = replace(paper_defaults(), K=32, n_row=6, n_col=6, L_a=9, L_b=5,
                  L_d=8, seed=7)

    def check(name, fn):
        try:
            ok = bool(fn())
            detail = ""
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f" ({exc})"
        checks.append((name, ok, detail))

    def selectivity():
        big = replace(cfg, K=32, n_row=8, n_col=4)  # N = K
        real = channel.realize_channel(realization_rng(big.seed, 0), big)
        sel = selection.random_nonconsecutive(rng, 5, big.K)
        program = ris.synthesize_program(sel, big.K, big.num_reflectors)
        resp = ris.bin_responses(ris.composite_response(real.V, program))
        mask = np.zeros(big.K, dtype=bool)
        mask[list(sel.indices)] = True
        peak = np.max(np.abs(resp[mask]))
        return np.max(np.abs(resp[~mask])) <= 1e-9 * peak

    def passivity():
        for _ in range(200):
            K = int(rng.integers(2, 65))
            size = int(rng.integers(1, K + 1))
            sel = selection.fixed_adjacent(rng, size, K)
            program = ris.synthesize_program(sel, K, int(rng.integers(1, 2 * K)))
            if ris.passivity_margin(program) > 1.0 + 1e-12:
                return False
        return True

    def parseval():
        x = rng.standard_normal(48) + 1j * rng.standard_normal(48)
        lhs = np.sum(np.abs(ris.bin_responses(x)) ** 2)
        rhs = 48 * np.sum(np.abs(x) ** 2)
        return abs(lhs - rhs) <= 1e-9 * rhs

    def kkt():
        g = rng.uniform(0.1, 10.0, size=16)
        alloc = metrics.waterfill(g, 2.0)
        on = alloc.p > 0
        levels = alloc.p[on] + 1.0 / g[on]
        budget_ok = abs(np.mean(alloc.p) - 2.0) <= 1e-9 * 2.0
        return budget_ok and np.all(np.abs(levels - alloc.water_level)
                                    <= 1e-9 * alloc.water_level)

    def dft_oracle():
        sel = selection.random_nonconsecutive(rng, 4, 16)
        w = ris.synthesize_weights(sel, 16)
        b = selection.selector_vector(sel, 16)
        naive = np.array([np.sum(b * np.exp(-2j * np.pi * i * np.arange(16) / 16))
                          for i in range(16)])
        return np.max(np.abs(w - naive)) <= 1e-12 * 16

    def rank1_oracle():
        sel = selection.adjacent(rng, 3, 16)
        program = ris.synthesize_program(sel, 16, 10)
        V = rng.standard_normal((10, 16)) + 1j * rng.standard_normal((10, 16))
        dense = (V @ np.outer(np.ones(16), program.w) * program.scale).T @ np.ones(10)
        fac = ris.composite_response(V, program)
        return np.max(np.abs(dense - fac)) <= 1e-9 * np.max(np.abs(dense))

    check("perfect selectivity at N = K", selectivity)
    check("passivity margin <= 1", passivity)
    check("Parseval identity", parseval)
    check("water-filling KKT + budget", kkt)
    check("weights match naive DFT", dft_oracle)
    check("factored response matches dense product", rank1_oracle)

    lines = [f"{'PASS' if ok else 'FAIL'}  {name}{detail}"
             for name, ok, detail in checks]
    if verbose:
        for line in lines:
            print(line)
    return all(ok for _, ok, _ in checks), lines
