"""Link metrics: per-bin gains, water-filling power allocation, achievable
rate with cyclic-prefix loss, selectivity ratio S/I, and the coherent /
relative rate pair."""

import math
from dataclasses import dataclass

import numpy as np

from .ris import bin_responses


@dataclass(frozen=True)
class PowerAllocation:
    p: np.ndarray       # per-bin powers, watts, length K
    water_level: float  # mu, watts


@dataclass(frozen=True)
class LinkMetrics:
    rate: float           # R, bit/s
    coherent_rate: float  # R_C, bit/s
    relative_rate: float  # R_Rel, percent (nan when R_C = 0)
    s_over_i: float       # linear ratio, math.inf for perfect selectivity
    xi: int               # cyclic-prefix loss |I| + M - 1
    b_rate: float         # rate bandwidth, Hz


def dbm_to_watt(dbm):
    return 10.0 ** ((dbm - 30.0) / 10.0)


def rate_bandwidth(sel, cfg):
    """Bandwidth occupied by the selected subcarriers: |I| * B / K."""
    return len(sel.indices) * cfg.bandwidth / cfg.K


def per_bin_gain(realization, h_c, sel, cfg, coherent=False):
    """SNR kernel per bin: |D_i + C_i|^2 / (B_rate N0), with the direct bin
    response D_i scaled by 1/|I| and C_i the reflected bin response. The
    coherent variant adds magnitudes, (|D_i| + |C_i|)^2."""
    size = len(sel.indices)
    d = bin_responses(realization.h_d) / size
    c = bin_responses(h_c)
    if coherent:
        amp2 = (np.abs(d) + np.abs(c)) ** 2
    else:
        amp2 = np.abs(d + c) ** 2
    noise = rate_bandwidth(sel, cfg) * dbm_to_watt(cfg.noise_density)
    return amp2 / noise


def waterfill(g, total_power, K=None):
    """Water-filling over bins with gains g: p_i = max(0, mu - 1/g_i).

    total_power is the mean power constraint P, so sum(p) = K * P. The water
    level is bracketed by bisection, then solved exactly on the resulting
    active set so the budget and KKT conditions hold to machine precision.
    """
    g = np.asarray(g, dtype=float)
    if K is None:
        K = len(g)
    if np.any(g < 0):
        raise ValueError("gains must be non-negative")
    active = g > 0
    if not np.any(active):
        raise ValueError("all-zero gains: no bin can carry power")
    budget = K * total_power
    inv = np.full_like(g, np.inf)
    inv[active] = 1.0 / g[active]

    def allocated(mu):
        return float(np.sum(np.maximum(0.0, mu - inv[active])))

    lo = float(np.min(inv[active]))
    hi = lo + budget / np.count_nonzero(active) + float(np.max(inv[active][np.isfinite(inv[active])]))
    while allocated(hi) < budget:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if allocated(mid) < budget:
            lo = mid
        else:
            hi = mid
    on = inv < hi  # active set at the bracketed level
    mu = (budget + float(np.sum(inv[on]))) / np.count_nonzero(on)
    p = np.maximum(0.0, mu - inv)
    p[~on] = 0.0
    return PowerAllocation(p=p, water_level=mu)


def achievable_rate(g, p, sel, M, cfg):
    """R = (B_rate / xi) * sum_i log2(1 + p_i g_i), xi = |I| + M - 1."""
    xi = len(sel.indices) + M - 1
    b_rate = rate_bandwidth(sel, cfg)
    return float(b_rate / xi * np.sum(np.log2(1.0 + np.asarray(p) * np.asarray(g))))


def s_over_i(realization, h_c, sel, include_direct=False):
    """Selected-bin signal power over unselected-bin reflected leakage.

    The direct channel is dropped from the ratio (the selectivity of the
    reflection is what is being measured); include_direct=True adds it to
    the selected-bin sum instead. Returns math.inf when the leakage is
    negligible (perfect selectivity)."""
    K = len(realization.h_d)
    size = len(sel.indices)
    if size >= K:
        raise ValueError("S/I undefined when every subcarrier is selected")
    c = bin_responses(h_c)
    mask = np.zeros(K, dtype=bool)
    mask[list(sel.indices)] = True
    sig = c[mask]
    if include_direct:
        sig = sig + bin_responses(realization.h_d)[mask] / size
    num = float(np.sum(np.abs(sig) ** 2))
    den = float(np.sum(np.abs(c[~mask]) ** 2))
    if den <= 1e-24 * num or den == 0.0:
        return math.inf
    return num / den


def relative_rate(realization, h_c, sel, cfg):
    """Full metric bundle: achievable rate R, coherent upper bound R_C
    (per-bin magnitudes added in phase, own water-fill), and their ratio."""
    p_tot = dbm_to_watt(cfg.tx_power)
    g = per_bin_gain(realization, h_c, sel, cfg, coherent=False)
    g_coh = per_bin_gain(realization, h_c, sel, cfg, coherent=True)
    alloc = waterfill(g, p_tot, cfg.K)
    alloc_coh = waterfill(g_coh, p_tot, cfg.K)
    r = achievable_rate(g, alloc.p, sel, realization.M, cfg)
    r_coh = achievable_rate(g_coh, alloc_coh.p, sel, realization.M, cfg)
    rel = 100.0 * r / r_coh if r_coh > 0 else math.nan
    si = s_over_i(realization, h_c, sel) if len(sel.indices) < cfg.K else math.nan
    return LinkMetrics(rate=r, coherent_rate=r_coh, relative_rate=rel,
                       s_over_i=si, xi=len(sel.indices) + realization.M - 1,
                       b_rate=rate_bandwidth(sel, cfg))
