import pytest

from abflux.config import SCHEMA, default_config, parse_config
from abflux.errors import ConfigError


def test_defaults_filled():
    cfg = parse_config("[solenoid]\nradius = 2e-3\n")
    assert cfg["solenoid"]["radius"] == 2e-3
    for section, keys in SCHEMA.items():
        assert set(cfg[section]) == set(keys)
    assert cfg["squid"]["kp"] == 0.5


def test_negative_radius_named():
    with pytest.raises(ConfigError, match=r"solenoid\.radius.*> 0") as info:
        parse_config("[solenoid]\nradius = -1e-3\n")
    assert info.value.key == "solenoid.radius"


def test_relativistic_speed_rule():
    with pytest.raises(ConfigError, match="non-relativistic") as info:
        parse_config("[charge]\nvelocity = [2e8, 0, 0]\n")
    assert info.value.key == "charge.velocity"
    parse_config("[charge]\nvelocity = [2e8, 0, 0]\nrelativistic_override = true\n")


def test_unknown_key_and_section():
    with pytest.raises(ConfigError, match=r"charge\.speed"):
        parse_config("[charge]\nspeed = 1.0\n")
    with pytest.raises(ConfigError, match="plot"):
        parse_config("[plot]\ncolor = 'red'\n")


def test_syntax_error_has_position():
    with pytest.raises(ConfigError, match=r"line 2"):
        parse_config("[solenoid]\nradius = = 1\n")


@pytest.mark.parametrize("text,key", [
    ("[shield]\npulse_samples = 100\n", "shield.pulse_samples"),
    ("[squid]\nhypothesis = 'maybe'\n", "squid.hypothesis"),
    ("[quadrature]\ntol = 0\n", "quadrature.tol"),
    ("[solenoid]\naxis = [0, 0, 0]\n", "solenoid.axis"),
    ("[lc]\ndim = 2\n", "lc.dim"),
    ("[grid]\nx = [1, 0, 5]\n", "grid.x"),
    ("[trajectory]\nt_start = 1.0\nt_end = 0.0\n", "trajectory.t_end"),
    ("[solenoid]\ninfinite = 1\n", "solenoid.infinite"),
])
def test_constraints(text, key):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.key == key
    assert key in str(info.value)


def test_hash_tracks_resolved_values():
    a = default_config()
    b = parse_config("[solenoid]\nradius = 1e-3\n")  # explicit default
    c = parse_config("[solenoid]\nradius = 1.5e-3\n")
    assert a.hash == b.hash != c.hash
    assert len(a.hash) == 64


def test_builders():
    cfg = default_config()
    assert cfg.solenoid().radius == 1e-3
    assert cfg.charge().speed == 1e5
    assert cfg.shield().thick
    assert cfg.protocol().n_quanta == 10
    assert cfg.hypothesis().value == "ie"
