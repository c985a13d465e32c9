"""Multipath tapped-delay-line channel draws.

Direct (AP-UE) and per-reflector composite (AP-RIS-UE) channels are realized
as length-K complex tap sequences sampled at the system bandwidth. The
composite channel cascades the AP-RIS and RIS-UE links per reflector, with
planar-array phase rotations applied per path.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .config import SPEED_OF_LIGHT, wavelength


@dataclass(frozen=True)
class PathSet:
    delays: np.ndarray     # seconds, shape (L,)
    gains: np.ndarray      # complex amplitudes, shape (L,)
    azimuths: np.ndarray   # radians, shape (L,)
    elevations: np.ndarray  # radians, shape (L,)
    has_los: bool          # path 0 is the LOS path

    def __len__(self):
        return len(self.delays)


@dataclass(frozen=True)
class ChannelRealization:
    h_d: np.ndarray    # direct channel taps, shape (K,)
    V: np.ndarray      # composite taps per reflector, shape (N, K)
    M: int             # channel length: 1 + largest nonzero tap index
    tau_ref: float     # subtracted global reference delay, seconds


def _free_space_amp(distance, lam):
    return lam / (4.0 * np.pi * distance)


def _nlos_gains(rng, count, ref_amp, penalty_db):
    """Circularly-symmetric complex Gaussian gains with per-path power
    ref_amp^2 * 10^(-penalty_db/10)."""
    sigma = ref_amp * 10.0 ** (-penalty_db / 20.0)
    return sigma * (rng.standard_normal(count) + 1j * rng.standard_normal(count)) / np.sqrt(2.0)


def _angles_to(src, dst):
    """Azimuth/elevation (radians) of the direction src -> dst."""
    d = np.asarray(dst, dtype=float) - np.asarray(src, dtype=float)
    az = np.arctan2(d[1], d[0])
    el = np.arctan2(d[2], np.hypot(d[0], d[1]))
    return az, el


def draw_direct_paths(rng, cfg):
    """L_d pure-NLOS paths with delays uniform on [tau_d, 2*tau_d]."""
    d = np.linalg.norm(np.asarray(cfg.ue_pos) - np.asarray(cfg.ap_pos))
    tau_d = d / SPEED_OF_LIGHT
    delays = rng.uniform(tau_d, 2.0 * tau_d, size=cfg.L_d)
    ref_amp = _free_space_amp(d, wavelength(cfg))
    gains = _nlos_gains(rng, cfg.L_d, ref_amp,
                        cfg.nlos_penalty_db + cfg.direct_extra_loss_db)
    zeros = np.zeros(cfg.L_d)
    return PathSet(delays=delays, gains=gains, azimuths=zeros,
                   elevations=zeros, has_los=False)


def _draw_link_paths(rng, cfg, count, endpoint_a, endpoint_b, lam):
    """One composite-link PathSet: path 0 is the LOS path at the geometric
    delay and angle, the rest are delayed/perturbed NLOS paths."""
    d = np.linalg.norm(np.asarray(endpoint_b) - np.asarray(endpoint_a))
    tau_los = d / SPEED_OF_LIGHT
    az_los, el_los = _angles_to(*(
        (endpoint_a, endpoint_b) if tuple(endpoint_a) == tuple(cfg.ris_pos)
        else (endpoint_b, endpoint_a)))

    delays = np.empty(count)
    delays[0] = tau_los
    delays[1:] = rng.uniform(tau_los, 2.0 * tau_los, size=count - 1)

    az_half = np.deg2rad(cfg.azimuth_spread)
    el_half = np.deg2rad(cfg.elevation_spread)
    azimuths = np.full(count, az_los)
    elevations = np.full(count, el_los)
    azimuths[1:] += rng.uniform(-az_half, az_half, size=count - 1)
    elevations[1:] += rng.uniform(-el_half, el_half, size=count - 1)

    los_amp = _free_space_amp(d, lam)
    gains = np.empty(count, dtype=complex)
    gains[0] = los_amp
    gains[1:] = _nlos_gains(rng, count - 1, los_amp, cfg.nlos_penalty_db)
    return PathSet(delays=delays, gains=gains, azimuths=azimuths,
                   elevations=elevations, has_los=True)


def draw_composite_paths(rng, cfg):
    """(AP-RIS, RIS-UE) path sets; angles are seen from the RIS."""
    lam = wavelength(cfg)
    paths_a = _draw_link_paths(rng, cfg, cfg.L_a, cfg.ap_pos, cfg.ris_pos, lam)
    paths_b = _draw_link_paths(rng, cfg, cfg.L_b, cfg.ris_pos, cfg.ue_pos, lam)
    return paths_a, paths_b


def steering_phase(reflector_index, azimuth, elevation, cfg):
    """Planar-array phase rotation of one reflector for a plane wave at the
    given azimuth/elevation (radians). Row-major indexing, phase center at
    the RIS geometric center."""
    n = cfg.num_reflectors
    if not 0 <= reflector_index < n:
        raise IndexError(f"reflector index {reflector_index} out of range [0, {n})")
    lam = wavelength(cfg)
    row, col = divmod(reflector_index, cfg.n_col)
    y = (col - (cfg.n_col - 1) / 2.0) * cfg.element_spacing_h * lam
    z = (row - (cfg.n_row - 1) / 2.0) * cfg.element_spacing_v * lam
    phase = (2.0 * np.pi / lam) * (y * np.sin(azimuth) * np.cos(elevation)
                                   + z * np.sin(elevation))
    return np.exp(1j * phase)


def _round_half_up(x):
    return np.floor(np.asarray(x) + 0.5).astype(int)


def taps_from_paths(paths, sample_rate, tau_ref, cfg, reflector_index=None,
                    num_taps=None):
    """Accumulate path gains into a tap vector at the given sample rate.

    Tap index is round-half-up of the delay offset in samples. When a
    reflector index is given, each path gain is rotated by that reflector's
    steering phase. Paths landing at or beyond the tap count are dropped
    with a counted warning.
    """
    if num_taps is None:
        num_taps = cfg.K
    taps = np.zeros(num_taps, dtype=complex)
    idx = _round_half_up((paths.delays - tau_ref) * sample_rate)
    gains = paths.gains
    if reflector_index is not None:
        gains = gains * np.array([
            steering_phase(reflector_index, az, el, cfg)
            for az, el in zip(paths.azimuths, paths.elevations)])
    keep = idx < num_taps
    dropped = int(np.count_nonzero(~keep))
    if dropped:
        warnings.warn(f"{dropped} path(s) beyond the {num_taps}-tap window dropped")
    np.add.at(taps, idx[keep], gains[keep])
    return taps


def _steering_vectors(paths, cfg):
    """Steering phases for every (reflector, path) pair, shape (N, L)."""
    lam = wavelength(cfg)
    rows = np.arange(cfg.num_reflectors) // cfg.n_col
    cols = np.arange(cfg.num_reflectors) % cfg.n_col
    y = (cols - (cfg.n_col - 1) / 2.0) * cfg.element_spacing_h * lam
    z = (rows - (cfg.n_row - 1) / 2.0) * cfg.element_spacing_v * lam
    u = np.sin(paths.azimuths) * np.cos(paths.elevations)
    w = np.sin(paths.elevations)
    return np.exp(1j * (2.0 * np.pi / lam) * (np.outer(y, u) + np.outer(z, w)))


def realize_channel(rng, cfg):
    """Draw one full channel realization.

    The global delay reference is the earliest arrival over the direct and
    composite links, so the first occupied tap is index 0. Composite taps
    per reflector are the linear convolution of the two link tap vectors,
    truncated to K samples.
    """
    K = cfg.K
    fs = cfg.bandwidth
    direct = draw_direct_paths(rng, cfg)
    paths_a, paths_b = draw_composite_paths(rng, cfg)

    tau_comp = paths_a.delays[0] + paths_b.delays[0]
    tau_ref = min(direct.delays.min(), tau_comp)

    h_d = taps_from_paths(direct, fs, tau_ref, cfg)

    # Per-link taps referenced to their own LOS delay; the cascade is then
    # shifted by the composite offset relative to the global reference.
    idx_a = _round_half_up((paths_a.delays - paths_a.delays[0]) * fs)
    idx_b = _round_half_up((paths_b.delays - paths_b.delays[0]) * fs)
    shift = int(_round_half_up((tau_comp - tau_ref) * fs))

    steer_a = _steering_vectors(paths_a, cfg)   # (N, L_a)
    steer_b = _steering_vectors(paths_b, cfg)   # (N, L_b)

    len_a = int(idx_a.max()) + 1
    len_b = int(idx_b.max()) + 1
    N = cfg.num_reflectors
    taps_a = np.zeros((N, len_a), dtype=complex)
    taps_b = np.zeros((N, len_b), dtype=complex)
    for l, k in enumerate(idx_a):
        taps_a[:, k] += paths_a.gains[l] * steer_a[:, l]
    for l, k in enumerate(idx_b):
        taps_b[:, k] += paths_b.gains[l] * steer_b[:, l]

    V = np.zeros((N, K), dtype=complex)
    dropped = 0
    conv_len = len_a + len_b - 1
    keep = max(0, min(conv_len, K - shift))
    for n in range(N):
        v = np.convolve(taps_a[n], taps_b[n])
        if keep < conv_len:
            dropped += int(np.count_nonzero(v[keep:]))
        if keep > 0:
            V[n, shift:shift + keep] = v[:keep]
    if dropped:
        warnings.warn(f"{dropped} composite tap(s) beyond the {K}-tap window dropped")

    support = np.flatnonzero(np.abs(h_d) > 0)
    m = int(support.max()) + 1 if support.size else 1
    col_energy = np.abs(V).sum(axis=0)
    support_v = np.flatnonzero(col_energy > 0)
    if support_v.size:
        m = max(m, int(support_v.max()) + 1)
    return ChannelRealization(h_d=h_d, V=V, M=m, tau_ref=tau_ref)
