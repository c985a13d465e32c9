import math

import pytest

from fsris.config import (ScenarioConfig, ValidationError, load_config,
                          paper_defaults, serialize, wavelength)


def test_paper_defaults_values():
    cfg = paper_defaults()
    assert cfg.K == 400
    assert cfg.n_row == cfg.n_col == 20
    assert cfg.num_reflectors == 400
    assert cfg.f_c == 3e9
    assert cfg.bandwidth == 10.5e6
    assert cfg.noise_density == -164.0
    assert cfg.L_a == 101
    assert cfg.L_b == 51
    assert cfg.L_d == 100
    assert cfg.element_spacing_h == 0.25
    assert cfg.element_spacing_v == 0.25
    assert cfg.azimuth_spread == 40.0
    assert cfg.elevation_spread == 10.0


def test_paper_defaults_pass_validation():
    paper_defaults()  # __post_init__ validates


@pytest.mark.parametrize("f_c,expected", [
    (3e9, 0.0999308),
    (299_792_458.0, 1.0),
    (1.5e9, 0.1998616),
])
def test_wavelength(f_c, expected):
    cfg = load_config(f"f_c = {f_c}")
    assert wavelength(cfg) == pytest.approx(expected, rel=1e-6)


def test_load_override():
    cfg = load_config("K = 64")
    assert cfg.K == 64
    assert cfg.bandwidth == paper_defaults().bandwidth


def test_load_empty_is_defaults():
    assert load_config("") == paper_defaults()


def test_load_comments_and_positions():
    cfg = load_config("# a comment\nap_pos = 1, 2, 3  # inline\nseed = 9\n")
    assert cfg.ap_pos == (1.0, 2.0, 3.0)
    assert cfg.seed == 9


def test_invalid_k_names_key():
    with pytest.raises(ValidationError) as exc:
        load_config("K = 1")
    assert exc.value.key == "K"


def test_unknown_key_rejected():
    with pytest.raises(ValidationError):
        load_config("bogus = 1")


@pytest.mark.parametrize("line,key", [
    ("bandwidth = 0", "bandwidth"),
    ("L_a = 0", "L_a"),
    ("noise_density = nan", "noise_density"),
    ("ris_pos = 0,0,10", "ris_pos"),  # collides with default ap_pos
])
def test_invariant_violations(line, key):
    with pytest.raises(ValidationError) as exc:
        load_config(line)
    assert exc.value.key == key


def test_serialize_round_trip():
    cfg = load_config("K = 48\nue_pos = 1.5, -2, 0.25\ntx_power = 17.5")
    assert load_config(serialize(cfg)) == cfg


def test_derived_n():
    cfg = load_config("n_row = 3\nn_col = 5")
    assert cfg.num_reflectors == 15


def test_config_immutable():
    cfg = paper_defaults()
    with pytest.raises(Exception):
        cfg.K = 10
