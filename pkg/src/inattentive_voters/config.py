"""Scenario configuration files.

Format (one item per line)::

    # comment               blank lines and '#' / ';' comments are ignored
    [section]               one of the sections in SCHEMA
    key = value             keys are case-insensitive; values are stripped

All problems found in a document are collected and raised together as a
:class:`ConfigError`, each tagged with its line number.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import attention_costs as ac

MODES = ("solve", "sweep", "xi", "lp", "continuous", "benchmark")
SWEEP_PARAMS = ("v1", "i0", "i1", "f0")

SCHEMA = {
    "run": {"mode", "out", "jobs"},
    "cost": {"kind", "units"},
    "voter": {"v", "bandwidth"},
    "electorate": {"f0", "v1", "i0", "i1"},
    "primitives": {"alpha", "h_ability", "c"},
    "sweep": {"parameter", "from", "to", "steps"},
    "continuous": {"v", "capacity", "grid_points"},
}

REQUIRED = {
    "solve": [("voter", "v"), ("voter", "bandwidth")],
    "xi": [("electorate", k) for k in ("f0", "v1", "i0", "i1")],
    "sweep": [("electorate", k) for k in ("f0", "v1", "i0", "i1")]
    + [("sweep", k) for k in ("parameter", "from", "to", "steps")],
    "lp": [("electorate", k) for k in ("f0", "v1", "i0", "i1")],
    "continuous": [("continuous", "v"), ("continuous", "capacity")],
    "benchmark": [("primitives", k) for k in ("alpha", "h_ability", "c")],
}

_SECTION = re.compile(r"^\[\s*([A-Za-z_]+)\s*\]$")
_ITEM = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")


@dataclass(frozen=True)
class ConfigIssue:
    line: Optional[int]
    message: str

    def __str__(self):
        where = f"line {self.line}" if self.line is not None else "override"
        return f"{where}: {self.message}"


class ConfigError(ValueError):
    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("\n".join(str(i) for i in self.issues))


@dataclass(frozen=True)
class ScenarioConfig:
    mode: str
    cost_kind: str = "quadratic"
    units: str = "nats"
    out: Optional[str] = None
    jobs: int = 1
    v: Optional[float] = None
    bandwidth: Optional[float] = None
    f0: Optional[float] = None
    v1: Optional[float] = None
    i0: Optional[float] = None
    i1: Optional[float] = None
    alpha: Optional[float] = None
    h_ability: Optional[float] = None
    c: Optional[float] = None
    sweep_param: Optional[str] = None
    sweep_from: Optional[float] = None
    sweep_to: Optional[float] = None
    sweep_steps: Optional[int] = None
    continuous_v: tuple[float, ...] = field(default_factory=tuple)
    capacity: Optional[float] = None
    grid_points: int = 2001

    @property
    def cost(self) -> ac.AttentionCost:
        return ac.cost_from_name(self.cost_kind, self.units)

    @property
    def has_primitives(self) -> bool:
        return None not in (self.alpha, self.h_ability, self.c)


def read_document(text: str):
    """Split a document into ``{section: {key: (value, line)}}`` plus issues."""
    items: dict[str, dict[str, tuple[str, Optional[int]]]] = {}
    issues = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#;":
            continue
        m = _SECTION.match(line)
        if m:
            section = m.group(1).lower()
            if section not in SCHEMA:
                issues.append(ConfigIssue(lineno, f"unknown section [{section}]"))
                section = None
                continue
            items.setdefault(section, {})
            continue
        m = _ITEM.match(line)
        if not m:
            issues.append(ConfigIssue(lineno, f"cannot parse {raw.strip()!r}"))
            continue
        key, value = m.group(1).lower(), m.group(2).strip()
        if section is None:
            issues.append(ConfigIssue(lineno, f"key {key!r} outside a known section"))
            continue
        if key not in SCHEMA[section]:
            issues.append(ConfigIssue(lineno, f"unknown key {key!r} in [{section}]"))
            continue
        if key in items[section]:
            issues.append(ConfigIssue(lineno, f"duplicate key {key!r} in [{section}]"))
            continue
        items[section][key] = (value, lineno)
    return items, issues


class _Validator:
    def __init__(self, items):
        self.items = items
        self.issues: list[ConfigIssue] = []

    def line(self, section, key):
        return self.items.get(section, {}).get(key, (None, None))[1]

    def raw(self, section, key):
        return self.items.get(section, {}).get(key, (None, None))[0]

    def fail(self, section, key, msg):
        self.issues.append(ConfigIssue(self.line(section, key), f"[{section}] {key}: {msg}"))

    def number(self, section, key, lo=None, hi=None, lo_open=True, hi_open=True,
               integer=False):
        raw = self.raw(section, key)
        if raw is None:
            return None
        try:
            val = int(raw) if integer else float(raw)
        except ValueError:
            self.fail(section, key, f"expected {'an integer' if integer else 'a number'}, got {raw!r}")
            return None
        if val != val:
            self.fail(section, key, "NaN is not allowed")
            return None
        if lo is not None and (val <= lo if lo_open else val < lo):
            self.fail(section, key, f"must be {'>' if lo_open else '>='} {lo}, got {raw}")
            return None
        if hi is not None and (val >= hi if hi_open else val > hi):
            self.fail(section, key, f"must be {'<' if hi_open else '<='} {hi}, got {raw}")
            return None
        return val

    def choice(self, section, key, options, default=None):
        raw = self.raw(section, key)
        if raw is None:
            return default
        if raw.lower() not in options:
            self.fail(section, key, f"must be one of {', '.join(options)}, got {raw!r}")
            return default
        return raw.lower()


def parse_config(text: str, overrides: Optional[dict] = None,
                 mode: Optional[str] = None) -> ScenarioConfig:
    """Validate a configuration document.

    ``overrides`` maps ``(section, key)`` to string values that replace or
    add items (as the CLI flags do).  ``mode`` overrides ``[run] mode``.
    Raises :class:`ConfigError` listing every problem found.
    """
    items, issues = read_document(text)
    for (section, key), value in (overrides or {}).items():
        items.setdefault(section, {})[key] = (str(value), None)
    if mode is not None:
        items.setdefault("run", {})["mode"] = (mode, None)

    val = _Validator(items)
    val.issues.extend(issues)
    run_mode = val.choice("run", "mode", MODES)
    if run_mode is None and val.raw("run", "mode") is None:
        val.issues.append(ConfigIssue(None, "[run] mode is required"))

    kind = val.choice("cost", "kind", ("quadratic", "entropy", "binary-entropy"), "quadratic")
    units = val.choice("cost", "units", ("nats", "bits"), "nats")
    h_max = ac.cost_from_name(kind, units).h_max
    jobs = val.number("run", "jobs", lo=1, lo_open=False, integer=True) or 1

    kw = dict(
        v=val.number("voter", "v", -1, 1),
        bandwidth=val.number("voter", "bandwidth", 0, h_max),
        f0=val.number("electorate", "f0", 0, 1),
        v1=val.number("electorate", "v1", 0, 1, lo_open=False),
        i0=val.number("electorate", "i0", 0, h_max),
        i1=val.number("electorate", "i1", 0, h_max),
        alpha=val.number("primitives", "alpha", 0, 1),
        h_ability=val.number("primitives", "h_ability", 1),
        c=val.number("primitives", "c", 0),
        capacity=val.number("continuous", "capacity", 0),
    )
    grid_points = val.number("continuous", "grid_points", 3, lo_open=False, integer=True)

    cont_v: tuple[float, ...] = ()
    raw_v = val.raw("continuous", "v")
    if raw_v is not None:
        try:
            cont_v = tuple(float(s) for s in raw_v.split(",") if s.strip())
        except ValueError:
            val.fail("continuous", "v", f"expected comma-separated numbers, got {raw_v!r}")
        else:
            if not cont_v or any(not 0.0 < t < 1.0 for t in cont_v):
                val.fail("continuous", "v", "each value must lie in (0, 1)")
                cont_v = ()

    sweep_param = val.choice("sweep", "parameter", SWEEP_PARAMS)
    domain = {"v1": (0.0, 1.0, False), "i0": (0.0, h_max, True),
              "i1": (0.0, h_max, True), "f0": (0.0, 1.0, True)}
    s_lo, s_hi, s_open = domain.get(sweep_param, (None, None, True))
    sweep_from = val.number("sweep", "from", s_lo, s_hi, lo_open=s_open)
    sweep_to = val.number("sweep", "to", s_lo, s_hi, lo_open=s_open)
    steps = val.number("sweep", "steps", 2, lo_open=False, integer=True)
    if sweep_from is not None and sweep_to is not None and not sweep_from < sweep_to:
        val.fail("sweep", "to", f"sweep range is empty: from {sweep_from} is not below to {sweep_to}")

    if run_mode is not None:
        for section, key in REQUIRED[run_mode]:
            swept = run_mode == "sweep" and section == "electorate" and key == sweep_param
            if val.raw(section, key) is None and not swept:
                val.issues.append(ConfigIssue(None, f"[{section}] {key} is required in mode {run_mode}"))
        if run_mode == "lp" and kw["f0"] is not None and kw["f0"] >= 0.5:
            val.fail("electorate", "f0", "correlation only matters when f0 < 1/2")
        if run_mode == "benchmark" and None not in (kw["alpha"], kw["h_ability"]):
            l_ability = -kw["alpha"] * kw["h_ability"] / (1 - kw["alpha"])
            if not l_ability < -1:
                val.fail("primitives", "alpha", f"implied low ability {l_ability:.6g} must be below -1")

    if val.issues:
        raise ConfigError(val.issues)
    return ScenarioConfig(
        mode=run_mode, cost_kind="entropy" if kind == "binary-entropy" else kind,
        units=units, out=val.raw("run", "out"), jobs=jobs,
        sweep_param=sweep_param, sweep_from=sweep_from, sweep_to=sweep_to,
        sweep_steps=steps, continuous_v=cont_v,
        grid_points=grid_points if grid_points is not None else 2001,
        **kw,
    )


def load_config(path, overrides: Optional[dict] = None,
                mode: Optional[str] = None) -> ScenarioConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"), overrides, mode)
