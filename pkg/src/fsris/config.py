"""Scenario configuration: the single source of truth for every physical and
numerical parameter of the simulated link (units fixed per field)."""

from dataclasses import dataclass, fields, replace

SPEED_OF_LIGHT = 299_792_458.0  # m/s


class ValidationError(ValueError):
    """A configuration field failed validation."""

    def __init__(self, key, reason):
        self.key = key
        self.reason = reason
        super().__init__(f"{key}: {reason}")


@dataclass(frozen=True)
class ScenarioConfig:
    K: int = 400                    # OFDM subcarriers
    n_row: int = 20                 # RIS rows
    n_col: int = 20                 # RIS columns (N = n_row * n_col)
    f_c: float = 3e9                # carrier frequency, Hz
    bandwidth: float = 10.5e6       # sampled bandwidth B, Hz
    noise_density: float = -164.0   # N0, dBm/Hz
    tx_power: float = 20.0          # total transmit power P, dBm
    L_d: int = 100                  # direct (AP-UE) path count
    L_a: int = 101                  # AP-RIS path count
    L_b: int = 51                   # RIS-UE path count
    element_spacing_h: float = 0.25  # d_H, in wavelengths
    element_spacing_v: float = 0.25  # d_V, in wavelengths
    ap_pos: tuple = (0.0, 0.0, 10.0)    # meters
    ris_pos: tuple = (50.0, 0.0, 5.0)   # meters
    ue_pos: tuple = (45.0, 20.0, 1.5)   # meters
    azimuth_spread: float = 40.0    # degrees, half-width
    elevation_spread: float = 10.0  # degrees, half-width
    nlos_penalty_db: float = 20.0   # NLOS path power below LOS, dB
    direct_extra_loss_db: float = 10.0  # extra attenuation on the direct channel, dB
    seed: int = 0                   # 64-bit reproducibility seed

    @property
    def num_reflectors(self):
        return self.n_row * self.n_col

    def __post_init__(self):
        validate(self)


_INT_FIELDS = {"K", "n_row", "n_col", "L_d", "L_a", "L_b", "seed"}
_POS_FIELDS = {"ap_pos", "ris_pos", "ue_pos"}


def validate(cfg):
    import math

    if cfg.K < 2:
        raise ValidationError("K", "must be >= 2")
    if cfg.n_row < 1:
        raise ValidationError("n_row", "must be >= 1")
    if cfg.n_col < 1:
        raise ValidationError("n_col", "must be >= 1")
    if not cfg.f_c > 0:
        raise ValidationError("f_c", "must be > 0")
    if not cfg.bandwidth > 0:
        raise ValidationError("bandwidth", "must be > 0")
    for key in ("L_d", "L_a", "L_b"):
        if getattr(cfg, key) < 1:
            raise ValidationError(key, "must be >= 1")
    for key in ("element_spacing_h", "element_spacing_v"):
        if not getattr(cfg, key) > 0:
            raise ValidationError(key, "must be > 0")
    for key in ("noise_density", "tx_power", "nlos_penalty_db",
                "direct_extra_loss_db", "azimuth_spread", "elevation_spread"):
        if not math.isfinite(getattr(cfg, key)):
            raise ValidationError(key, "must be finite")
    for key in _POS_FIELDS:
        pos = getattr(cfg, key)
        if len(pos) != 3 or not all(math.isfinite(v) for v in pos):
            raise ValidationError(key, "must be 3 finite coordinates")
    if tuple(cfg.ap_pos) == tuple(cfg.ris_pos):
        raise ValidationError("ris_pos", "AP and RIS positions must differ")
    if tuple(cfg.ris_pos) == tuple(cfg.ue_pos):
        raise ValidationError("ue_pos", "RIS and UE positions must differ")
    if not (0 <= cfg.seed < 2**64):
        raise ValidationError("seed", "must fit in 64 bits")


def paper_defaults():
    """Default scenario: K=400 subcarriers, 20x20 RIS, 3 GHz carrier,
    B=10.5 MHz, N0=-164 dBm/Hz, path counts (100, 101, 51)."""
    return ScenarioConfig()


def wavelength(cfg):
    """Carrier wavelength lambda = c / f_c in meters."""
    return SPEED_OF_LIGHT / cfg.f_c


def _parse_value(key, raw):
    raw = raw.strip()
    try:
        if key in _POS_FIELDS:
            parts = [p for p in raw.replace(",", " ").split() if p]
            if len(parts) != 3:
                raise ValueError("expected 3 coordinates")
            return tuple(float(p) for p in parts)
        if key in _INT_FIELDS:
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ValidationError(key, f"cannot parse {raw!r}: {exc}") from None


def load_config(text):
    """Parse a flat 'key = value' document; unspecified keys take defaults.

    Lines starting with '#' (or inline '#' suffixes) are comments.
    Raises ValidationError naming the first offending key.
    """
    known = {f.name for f in fields(ScenarioConfig)}
    overrides = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"line {lineno}", f"expected 'key = value', got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ValidationError(key, "unknown configuration key")
        overrides[key] = _parse_value(key, raw)
    return replace(paper_defaults(), **overrides)


def serialize(cfg):
    """Inverse of load_config: emit one 'key = value' line per field."""
    lines = []
    for f in fields(ScenarioConfig):
        val = getattr(cfg, f.name)
        if f.name in _POS_FIELDS:
            val = ", ".join(repr(v) for v in val)
        else:
            val = repr(val)
        lines.append(f"{f.name} = {val}")
    return "\n".join(lines) + "\n"
