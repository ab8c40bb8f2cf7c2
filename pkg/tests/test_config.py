import pytest

from inattentive_voters.config import ConfigError, load_config, parse_config

MINIMAL = """
[run]
mode = solve
[cost]
kind = quadratic
[voter]
v = 0.24
bandwidth = 0.1
"""


def issues_of(text, **kw):
    with pytest.raises(ConfigError) as exc:
        parse_config(text, **kw)
    return exc.value.issues


def test_minimal_solve():
    cfg = parse_config(MINIMAL)
    assert (cfg.mode, cfg.cost_kind, cfg.v, cfg.bandwidth) == ("solve", "quadratic", 0.24, 0.1)


def test_sweep_from_above_to():
    text = """[run]
mode = sweep
[electorate]
f0 = 0.3
i0 = 0.1
i1 = 0.1
[sweep]
parameter = v1
from = 0.8
to = 0.2
steps = 10
"""
    issues = issues_of(text)
    assert any("empty" in i.message and i.line == 10 for i in issues)


def test_lp_config(tmp_path):
    path = tmp_path / "lp.ini"
    path.write_text("[run]\nmode=lp\n[electorate]\nf0=0.3\nv1=0.24\ni0=0.1\ni1=0.1\n")
    cfg = load_config(path)
    assert (cfg.f0, cfg.v1, cfg.i0, cfg.i1, cfg.cost_kind) == (0.3, 0.24, 0.1, 0.1, "quadratic")


def test_all_errors_reported_with_lines():
    text = """[run]
mode = solve
colour = red
[voter]
v = 1.5
bandwidth = abc
[nonsense]
"""
    issues = issues_of(text)
    lines = sorted(i.line for i in issues if i.line is not None)
    assert lines == [3, 5, 6, 7]


def test_missing_required_fields():
    issues = issues_of("[run]\nmode = xi\n[electorate]\nf0 = 0.3\n")
    missing = {i.message for i in issues}
    assert any("v1 is required" in m for m in missing)
    assert any("i1 is required" in m for m in missing)


def test_bandwidth_checked_against_cost():
    issues_of("[run]\nmode=solve\n[cost]\nkind=entropy\n[voter]\nv=0.2\nbandwidth=0.7\n")
    cfg = parse_config("[run]\nmode=solve\n[cost]\nkind=entropy\nunits=bits\n[voter]\nv=0.2\nbandwidth=0.7\n")
    assert cfg.units == "bits"


def test_overrides_and_mode():
    cfg = parse_config(MINIMAL, overrides={("voter", "v"): "0.3"})
    assert cfg.v == 0.3
    cfg = parse_config("", overrides={("primitives", "alpha"): "0.5",
                                      ("primitives", "h_ability"): "2",
                                      ("primitives", "c"): "0.2"}, mode="benchmark")
    assert cfg.mode == "benchmark"
    issues = issues_of("", overrides={("voter", "v"): "2"}, mode="solve")
    assert any(i.line is None for i in issues)


def test_duplicate_and_orphan_keys():
    issues = issues_of("v = 1\n[run]\nmode = solve\nmode = xi\n")
    assert {i.line for i in issues} >= {1, 4}


def test_lp_requires_minority_centrists():
    issues_of("[run]\nmode=lp\n[electorate]\nf0=0.6\nv1=0.24\ni0=0.1\ni1=0.1\n")


def test_benchmark_rejects_small_low_ability():
    issues_of("[run]\nmode=benchmark\n[primitives]\nalpha=0.2\nh_ability=2\nc=0.1\n")


def test_continuous_values():
    cfg = parse_config("[run]\nmode=continuous\n[continuous]\nv = 0.24, 0.25\ncapacity=0.1\n")
    assert cfg.continuous_v == (0.24, 0.25)
    issues_of("[run]\nmode=continuous\n[continuous]\nv = 0.24, x\ncapacity=0.1\n")
