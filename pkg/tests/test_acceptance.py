"""Acceptance gate: one test per release criterion, each printing a
PASS/FAIL line. Run with `pytest -s tests/test_acceptance.py` to see the
verdicts."""

import itertools
import math
import time

import numpy as np
import pytest
from scipy import stats

from fsris.config import load_config
from fsris.harness import (ExperimentSpec, records_to_csv, run_realization,
                           sweep_ris_size, sweep_selection_size)
from fsris.channel import realize_channel
from fsris.metrics import s_over_i, waterfill
from fsris.ris import (bin_responses, composite_response, passivity_margin,
                       synthesize_program, synthesize_weights)
from fsris.selection import (SelectionSet, random_nonconsecutive,
                             selector_vector)


def desk_cfg(**overrides):
    text = "\n".join(f"{k} = {v}" for k, v in overrides.items())
    return load_config(text)


def report(name, ok):
    print(f"{'PASS' if ok else 'FAIL'}  {name}")
    assert ok, name


def random_selection(rng, K):
    size = int(rng.integers(1, K // 2 + 1))
    return random_nonconsecutive(rng, size, K)


def test_perfect_selectivity():
    t0 = time.time()
    ok = True
    for K in (16, 64):
        rows = 4 if K == 16 else 8
        cfg = desk_cfg(K=K, n_row=rows, n_col=K // rows, L_a=9, L_b=5, L_d=8,
                       seed=101)
        for i in range(100):
            rng = np.random.default_rng([cfg.seed, i])
            real = realize_channel(rng, cfg)
            sel = random_selection(rng, K)
            prog = synthesize_program(sel, K, cfg.num_reflectors)
            resp = bin_responses(composite_response(real.V, prog))
            mask = np.zeros(K, dtype=bool)
            mask[list(sel.indices)] = True
            peak = np.max(np.abs(resp[mask]))
            ok &= bool(np.max(np.abs(resp[~mask])) <= 1e-9 * peak)
            sel_vals = resp[mask]
            ok &= bool(np.max(np.abs(sel_vals - sel_vals[0])) <= 1e-9 * abs(sel_vals[0]))
    ok &= (time.time() - t0) < 10
    report("perfect selectivity at N = K (unselected <= 1e-9, selected equal)", ok)


def test_si_infinite_at_full_ris():
    ok = True
    for K in (16, 64):
        rows = 4 if K == 16 else 8
        cfg = desk_cfg(K=K, n_row=rows, n_col=K // rows, L_a=9, L_b=5, L_d=8,
                       seed=101)
        hits = 0
        for i in range(100):
            rng = np.random.default_rng([cfg.seed, i])
            real = realize_channel(rng, cfg)
            sel = random_selection(rng, K)
            prog = synthesize_program(sel, K, cfg.num_reflectors)
            h_c = composite_response(real.V, prog)
            if s_over_i(real, h_c, sel) == math.inf:
                hits += 1
        ok &= hits == 100
    report("S/I is the +inf sentinel on 100/100 realizations at N >= K", ok)


def test_passivity_property():
    rng = np.random.default_rng(202)
    ok = True
    for _ in range(10_000):
        K = int(rng.integers(2, 65))
        size = int(rng.integers(1, K + 1))
        idx = np.sort(rng.choice(K, size=size, replace=False))
        sel = SelectionSet(indices=tuple(int(i) for i in idx), method="random",
                           requested_size=size)
        N = int(rng.integers(1, 2 * K + 1))
        prog = synthesize_program(sel, K, N)
        margin = passivity_margin(prog)
        ok &= margin <= 1 + 1e-12
        ok &= abs(abs(prog.w[0]) * prog.scale - 1.0) <= 1e-12
    report("passivity over 10^4 random (K, I, N) triples, margin <= 1, DC = 1", ok)


def test_oracle_equivalences():
    t0 = time.time()
    rng = np.random.default_rng(303)
    ok = True

    # synthesize_weights vs naive O(K^2) DFT
    for K in (8, 16, 33, 64):
        size = int(rng.integers(1, K + 1))
        idx = np.sort(rng.choice(K, size=size, replace=False))
        sel = SelectionSet(indices=tuple(int(i) for i in idx), method="random",
                           requested_size=size)
        w = synthesize_weights(sel, K)
        b = selector_vector(sel, K)
        k = np.arange(K)
        naive = np.array([np.sum(b * np.exp(-2j * np.pi * i * k / K))
                          for i in range(K)])
        ok &= bool(np.max(np.abs(w - naive)) <= 1e-12 * K)

    # composite_response vs dense rank-1 matrix product
    for K, N in ((8, 8), (16, 7), (32, 20)):
        size = int(rng.integers(1, K + 1))
        idx = np.sort(rng.choice(K, size=size, replace=False))
        sel = SelectionSet(indices=tuple(int(i) for i in idx), method="random",
                           requested_size=size)
        prog = synthesize_program(sel, K, N)
        V = rng.standard_normal((N, K)) + 1j * rng.standard_normal((N, K))
        dense = (V @ (np.outer(np.ones(K), prog.w) * prog.scale)).T @ np.ones(N)
        ok &= bool(np.max(np.abs(composite_response(V, prog) - dense))
                   <= 1e-12 * np.max(np.abs(dense)))

    # realize_channel vs path-pair double sum
    from fsris import channel as ch
    cfg = desk_cfg(K=16, n_row=1, n_col=2, L_a=3, L_b=3, L_d=3, seed=404)
    for i in range(10):
        draw = np.random.default_rng([cfg.seed, i])
        direct = ch.draw_direct_paths(draw, cfg)
        pa, pb = ch.draw_composite_paths(draw, cfg)
        tau_ref = min(direct.delays.min(), pa.delays[0] + pb.delays[0])
        fs = cfg.bandwidth
        shift = int(np.floor((pa.delays[0] + pb.delays[0] - tau_ref) * fs + 0.5))
        V_oracle = np.zeros((2, cfg.K), dtype=complex)
        for n in range(2):
            for l in range(cfg.L_a):
                for m in range(cfg.L_b):
                    kk = (int(np.floor((pa.delays[l] - pa.delays[0]) * fs + 0.5))
                          + int(np.floor((pb.delays[m] - pb.delays[0]) * fs + 0.5))
                          + shift)
                    if kk >= cfg.K:
                        continue
                    V_oracle[n, kk] += (
                        pa.gains[l] * ch.steering_phase(n, pa.azimuths[l], pa.elevations[l], cfg)
                        * pb.gains[m] * ch.steering_phase(n, pb.azimuths[m], pb.elevations[m], cfg))
        real = realize_channel(np.random.default_rng([cfg.seed, i]), cfg)
        ok &= bool(np.max(np.abs(real.V - V_oracle))
                   <= 1e-12 * np.max(np.abs(V_oracle)))

    # water-fill vs active-set enumeration
    for _ in range(20):
        K = int(rng.integers(2, 9))
        g = rng.uniform(0.0, 4.0, size=K)
        if not np.any(g > 0):
            g[0] = 1.0
        P = rng.uniform(0.05, 3.0)
        alloc = waterfill(g, P)
        best, best_rate = None, -1.0
        bins = [i for i in range(K) if g[i] > 0]
        for r in range(1, len(bins) + 1):
            for combo in itertools.combinations(bins, r):
                mu = (K * P + sum(1.0 / g[i] for i in combo)) / r
                p = np.zeros(K)
                for i in combo:
                    p[i] = mu - 1.0 / g[i]
                if np.any(p[list(combo)] < -1e-12):
                    continue
                if any(mu > 1.0 / g[i] + 1e-12 for i in bins if i not in combo):
                    continue
                rate = float(np.sum(np.log2(1.0 + p * g)))
                if rate > best_rate:
                    best, best_rate = p, rate
        ok &= bool(np.max(np.abs(alloc.p - best)) <= 1e-9 * max(1.0, K * P))

    ok &= (time.time() - t0) < 30
    report("oracle equivalences (DFT, rank-1 product, path pairs, water-fill)", ok)


def _si_key(rec):
    """Order key treating the all-infinite point as +inf dB."""
    return math.inf if rec.finite_count == 0 else rec.mean_si_db


def test_monotone_selectivity_trend():
    t0 = time.time()
    base = desk_cfg(K=64, seed=42)
    spec = ExperimentSpec(base=base, methods=("adjacent",), sel_sizes=(1, 7),
                          ris_sizes=(16, 36, 64), realizations=200)
    recs = sweep_ris_size(spec)
    ok = True
    for size in (1, 7):
        series = sorted((r for r in recs if r.sel_size == size),
                        key=lambda r: r.N)
        vals = [_si_key(r) for r in series]
        ok &= all(a < b for a, b in zip(vals, vals[1:]))
    ok &= (time.time() - t0) < 120
    report("mean S/I strictly increasing in N (K=64, |I| in {1,7}, adjacent)", ok)


def test_inflection_reproduction():
    base = desk_cfg(K=64, seed=42)
    spec = ExperimentSpec(base=base, methods=("random",), sel_sizes=(31,),
                          ris_sizes=(30, 36), realizations=200)
    recs = {r.N: r for r in sweep_ris_size(spec)}
    gap = recs[36].mean_si_db - recs[30].mean_si_db
    ok = gap >= 10.0
    report(f"inflection: S/I(N=36) - S/I(N=30) = {gap:.1f} dB >= 10 dB "
           "(K=64, random, |I|=31)", ok)


def test_relative_rate_trends():
    t0 = time.time()
    base = desk_cfg(K=64, n_row=8, n_col=8, seed=42)
    sizes = (1, 5, 9, 17, 31)
    spec = ExperimentSpec(base=base,
                          methods=("adjacent", "fixed_adjacent", "random"),
                          sel_sizes=sizes, realizations=500)
    recs = sweep_selection_size(spec)
    by = {(r.method, r.sel_size): r.mean_rel_rate_pct for r in recs}
    ok = all(0 < v <= 100 for v in by.values())
    for method in ("adjacent", "fixed_adjacent", "random"):
        series = [by[(method, s)] for s in sizes]
        ok &= all(a >= b for a, b in zip(series, series[1:]))
    ok &= all(by[("adjacent", s)] >= by[("fixed_adjacent", s)] for s in sizes)
    ok &= (time.time() - t0) < 300
    report("relative-rate trends (bounds, non-increasing in |I|, "
           "adjacent >= fixed_adjacent)", ok)


def test_random_selection_uniformity():
    K, size, draws = 8, 3, 100_000
    valid = [c for c in itertools.combinations(range(K), size)
             if all(b - a >= 2 for a, b in zip(c, c[1:]))]
    counts = dict.fromkeys(valid, 0)
    rng = np.random.default_rng(505)
    for _ in range(draws):
        counts[random_nonconsecutive(rng, size, K).indices] += 1
    _, p = stats.chisquare(list(counts.values()))
    ok = len(valid) == 20 and p > 0.001
    # at |I| = K/2 every draw is a non-consecutive set of exactly K/2 indices
    for _ in range(200):
        sel = random_nonconsecutive(rng, K // 2, K)
        ok &= len(sel.indices) == K // 2
        ok &= all(b - a >= 2 for a, b in zip(sel.indices, sel.indices[1:]))
    report(f"random-selection uniformity (chi-square p = {p:.3f} > 0.001)", ok)


def test_sweep_determinism_across_workers():
    base = desk_cfg(K=32, L_a=5, L_b=3, L_d=4, seed=77)
    kw = dict(base=base, methods=("adjacent", "random"), sel_sizes=(1, 3),
              ris_sizes=(4, 16), realizations=10)
    csv1 = records_to_csv(sweep_ris_size(ExperimentSpec(workers=1, **kw)))
    csv2 = records_to_csv(sweep_ris_size(ExperimentSpec(workers=4, **kw)))
    csv3 = records_to_csv(sweep_ris_size(ExperimentSpec(workers=1, **kw)))
    ok = csv1 == csv2 == csv3
    report("byte-identical CSV across reruns and worker counts", ok)
