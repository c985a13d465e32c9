"""Subcarrier selection: adjacent, fixed-adjacent and random (non-consecutive)
index-set draws, plus the binary selector vector."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SelectionSet:
    indices: tuple          # strictly increasing, all in [0, K)
    method: str             # adjacent | fixed_adjacent | random
    requested_size: int
    reference_j: int | None = None  # drawn reference index (adjacent variants)

    def __len__(self):
        return len(self.indices)


def adjacent(rng, size, K):
    """Window of size indices around a uniformly drawn reference j; indices
    falling outside [0, K) are clipped away, so the output can be smaller
    than requested near the band edges."""
    if not 1 <= size <= K:
        raise ValueError(f"selection size {size} outside [1, {K}]")
    j = int(rng.integers(0, K))
    half = size // 2
    window = range(j - half, j + half + 1)
    indices = tuple(i for i in window if 0 <= i < K)
    return SelectionSet(indices=indices, method="adjacent",
                        requested_size=size, reference_j=j)


def fixed_adjacent(rng, size, K):
    """Adjacent window with the reference restricted so no clipping can
    occur; the output always has exactly `size` indices."""
    if not 1 <= size <= K:
        raise ValueError(f"selection size {size} outside [1, {K}]")
    half = size // 2
    lo, hi = half, K - size + half  # inclusive j range (window stays in band)
    if hi < lo:
        raise ValueError(f"no admissible reference index for size {size}, K={K}")
    j = int(rng.integers(lo, hi + 1))
    indices = tuple(range(j - half, j - half + size))
    return SelectionSet(indices=indices, method="fixed_adjacent",
                        requested_size=size, reference_j=j)


def random_nonconsecutive(rng, size, K):
    """Uniform draw over all C(K-size+1, size) strictly non-consecutive
    size-subsets of {0..K-1}, via the stars-and-bars bijection: a sorted
    combination c_1 < ... < c_size from {0..K-size} maps to c_t + (t-1)."""
    if size < 1:
        raise ValueError("selection size must be >= 1")
    if K - size + 1 < size:
        raise ValueError(f"no non-consecutive set of {size} indices exists in [0, {K})")
    comb = np.sort(rng.choice(K - size + 1, size=size, replace=False))
    indices = tuple(int(c + t) for t, c in enumerate(comb))
    return SelectionSet(indices=indices, method="random", requested_size=size)


def selector_vector(sel, K):
    """Binary length-K vector b with b[i] = 1 iff i is selected."""
    if len(sel.indices) == 0:
        raise ValueError("empty selection set")
    if sel.indices[-1] >= K or sel.indices[0] < 0:
        raise ValueError("selection indices outside [0, K)")
    b = np.zeros(K)
    b[list(sel.indices)] = 1.0
    return b
