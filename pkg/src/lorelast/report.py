"""Verification reports and their deterministic JSON / CSV encoding."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

RELATIONS = ("abs", "le", "ge", "eq")


@dataclass
class Check:
    """One measured quantity.

    ``relation`` selects the test: 'abs' means |measured - expected| <= tolerance,
    'le' measured <= expected, 'ge' measured >= expected and 'eq' exact equality.
    """

    name: str
    measured: float
    expected: float
    tolerance: float = 0.0
    relation: str = "abs"
    passed: bool = field(default=None)

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        self.measured = _plain(self.measured)
        self.expected = _plain(self.expected)
        self.tolerance = _plain(self.tolerance)
        if self.passed is None:
            self.passed = self.evaluate()

    def evaluate(self):
        m, e = self.measured, self.expected
        if isinstance(m, float) and math.isnan(m):
            return False
        if self.relation == "abs":
            if m == e:
                return True
            return abs(m - e) <= self.tolerance
        if self.relation == "le":
            return m <= e
        if self.relation == "ge":
            return m >= e
        return m == e


@dataclass
class Report:
    suite: str
    config: dict
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    wall_time: float = None

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, *args, **kwargs):
        c = Check(*args, **kwargs)
        self.checks.append(c)
        return c

    def to_dict(self, include_timing=False):
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "config": {k: _plain(v) for k, v in self.config.items()},
            "checks": [{"name": c.name, "measured": c.measured, "expected": c.expected,
                        "tolerance": c.tolerance, "relation": c.relation, "pass": c.passed}
                       for c in self.checks],
            "data": _plain(self.data),
        }
        if include_timing and self.wall_time is not None:
            out["wall_time"] = self.wall_time
        return out

    @classmethod
    def from_dict(cls, d):
        checks = [Check(c["name"], _unplain(c["measured"]), _unplain(c["expected"]),
                        _unplain(c["tolerance"]), c["relation"], c["pass"]) for c in d["checks"]]
        return cls(d["suite"], dict(d["config"]), checks, d.get("data", {}), d.get("wall_time"))


def _plain(v):
    """numpy scalars/arrays to Python types; recursive for containers."""
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, np.ndarray):
        return [_plain(x) for x in v.tolist()]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return v


def _unplain(v):
    if isinstance(v, str) and v in ("inf", "-inf", "nan"):
        return float(v)
    return v


def format_float(x):
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    s = "%.17g" % x
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    return json.dumps(str(obj), ensure_ascii=False)


def to_json(report, include_timing=False):
    return _encode(report.to_dict(include_timing), 2, 0) + "\n"


def from_json(text):
    return Report.from_dict(json.loads(text))


CSV_FIELDS = ("suite", "name", "measured", "expected", "tolerance", "relation", "pass")


def to_csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)

    def fmt(v):
        return format_float(v).strip('"') if isinstance(v, float) else v

    for c in report.checks:
        w.writerow([report.suite, c.name, fmt(c.measured), fmt(c.expected), fmt(c.tolerance),
                    c.relation, "true" if c.passed else "false"])
    return buf.getvalue()


def emit(report, path=None, fmt="json", include_timing=False):
    """Write the report; ``path=None`` returns the text instead."""
    if fmt == "json":
        text = to_json(report, include_timing)
    elif fmt == "csv":
        text = to_csv(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is None:
        return text
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
    return text
