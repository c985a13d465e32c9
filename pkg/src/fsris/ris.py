"""Time-varying RIS coefficient synthesis.

The coefficient sequence is the unnormalized DFT of the binary subcarrier
selector, scaled by the selection size so every implied configuration-matrix
entry stays passive (magnitude <= 1). With fewer reflectors than subcarriers
the sequence is truncated to its first N samples.
"""

from dataclasses import dataclass

import numpy as np

from .selection import selector_vector


@dataclass(frozen=True)
class RisProgram:
    w: np.ndarray        # coefficient sequence, length K (zero beyond active_samples)
    active_samples: int  # min(N, K)
    scale: float         # 1 / |selection|
    selection: object    # the SelectionSet this program was built from


def synthesize_weights(sel, K):
    """w[k] = sum over selected bins i of exp(-j 2 pi i k / K)."""
    b = selector_vector(sel, K)
    return np.fft.fft(b)


def apply_reflector_limit(w, N, sel):
    """Zero all samples at or beyond min(N, K); exact program for N >= K."""
    if N < 1:
        raise ValueError("reflector count must be >= 1")
    K = len(w)
    active = min(N, K)
    w_lim = np.array(w, dtype=complex)
    w_lim[active:] = 0.0
    return RisProgram(w=w_lim, active_samples=active,
                      scale=1.0 / len(sel.indices), selection=sel)


def synthesize_program(sel, K, N):
    return apply_reflector_limit(synthesize_weights(sel, K), N, sel)


def passivity_margin(program):
    """Largest reflection-coefficient magnitude; <= 1 by construction and
    exactly 1 at the DC sample."""
    return float(np.max(np.abs(program.w)) * program.scale)


def composite_response(V, program):
    """Composite reflected channel h_c for per-reflector taps V (N x K).

    Equals the literal rank-1 matrix evaluation (V (1_K w^T / |I|))^T 1_N,
    computed in factored form: h_c[k] = scale * w[k] * sum(V).
    """
    V = np.asarray(V)
    if V.ndim != 2 or V.shape[1] != len(program.w):
        raise ValueError(f"V must be N x {len(program.w)}, got {V.shape}")
    return program.scale * program.w * V.sum()


def bin_response(x, i):
    """Inner product of DFT row i with x: sum_k exp(+j 2 pi i k / K) x[k]."""
    x = np.asarray(x)
    K = len(x)
    if not 0 <= i < K:
        raise IndexError(f"bin {i} out of range [0, {K})")
    k = np.arange(K)
    return complex(np.sum(np.exp(2j * np.pi * i * k / K) * x))


def bin_responses(x):
    """All K bin responses at once (K times the inverse DFT)."""
    x = np.asarray(x)
    return np.fft.ifft(x) * len(x)
