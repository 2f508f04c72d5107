"""Report model shared by analyze, classify-ckf and scenario runs.

Exact values stay Fractions until rendering, where they become "p/q" strings;
numeric values are floats with an optional residual.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ratmath.rational import format_rational, parse_rational
from utils.errors import ValidationError

SECTION_ORDER = (
    "input",
    "connection",
    "curvature",
    "ricci",
    "scalar",
    "schouten",
    "cotton",
    "cotton_york",
    "weyl",
    "w6",
    "flags",
    "distributions",
    "conditions",
    "family",
    "orbit",
    "chain",
    "obstruction",
    "classification",
    "golden",
)

MODES = ("exact", "numeric", "text", "flag")


def _freeze(value):
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    return value


@dataclass(frozen=True)
class Entry:
    key: str
    mode: str
    value: object
    residual: float | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValidationError(f"Unknown report entry mode {self.mode!r}")
        object.__setattr__(self, "value", _freeze(self.value))


@dataclass
class Report:
    title: str
    sections: dict = field(default_factory=dict)

    def _section(self, name):
        if name not in SECTION_ORDER:
            raise ValidationError(f"Unknown report section {name!r}")
        return self.sections.setdefault(name, [])

    def exact(self, section, key, value):
        self._section(section).append(Entry(key, "exact", value))

    def numeric(self, section, key, value, residual=None):
        self._section(section).append(Entry(key, "numeric", value, residual))

    def text(self, section, key, value):
        self._section(section).append(Entry(key, "text", str(value)))

    def flag(self, section, key, value):
        self._section(section).append(Entry(key, "flag", bool(value)))

    def ordered(self):
        return [(name, self.sections[name]) for name in SECTION_ORDER if self.sections.get(name)]

    def lookup(self, section, key):
        for entry in self.sections.get(section, []):
            if entry.key == key:
                return entry
        return None

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return self.title == other.title and self.ordered() == other.ordered()


def _exact_to_json(value):
    if isinstance(value, tuple):
        return [_exact_to_json(v) for v in value]
    return format_rational(value)


def _exact_from_json(value, where):
    if isinstance(value, list):
        return tuple(_exact_from_json(v, where) for v in value)
    return parse_rational(value, where)


def _numeric_to_json(value):
    if isinstance(value, tuple):
        return [_numeric_to_json(v) for v in value]
    return float(value)


def to_json(report):
    sections = []
    for name, entries in report.ordered():
        items = []
        for entry in entries:
            item = {"key": entry.key, "mode": entry.mode}
            if entry.mode == "exact":
                item["value"] = _exact_to_json(entry.value)
            elif entry.mode == "numeric":
                item["value"] = _numeric_to_json(entry.value)
                if entry.residual is not None:
                    item["residual"] = float(entry.residual)
            else:
                item["value"] = entry.value
            items.append(item)
        sections.append({"name": name, "entries": items})
    return {"title": report.title, "sections": sections}


def dumps(report):
    return json.dumps(to_json(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def from_json(data):
    """Rebuild a Report from its JSON form; exact values come back as Fractions."""
    if not isinstance(data, dict) or "title" not in data or "sections" not in data:
        raise ValidationError("Report JSON needs 'title' and 'sections'")
    report = Report(data["title"])
    for section in data["sections"]:
        name = section["name"]
        for item in section["entries"]:
            key, mode, value = item["key"], item["mode"], item["value"]
            where = f"{name}.{key}"
            if mode == "exact":
                report.exact(name, key, _exact_from_json(value, where))
            elif mode == "numeric":
                report.numeric(name, key, _freeze(value), item.get("residual"))
            elif mode == "text":
                report.text(name, key, value)
            elif mode == "flag":
                report.flag(name, key, value)
            else:
                raise ValidationError(f"{where}: unknown mode {mode!r}")
    return report


def loads(text):
    return from_json(json.loads(text))


def _render_exact(value):
    if isinstance(value, tuple):
        if value and isinstance(value[0], tuple):
            return "[" + ", ".join(_render_exact(row) for row in value) + "]"
        return "(" + ", ".join(_render_exact(v) for v in value) + ")"
    return format_rational(Fraction(value))


def _render_numeric(value):
    if isinstance(value, tuple):
        return "(" + ", ".join(_render_numeric(v) for v in value) + ")"
    return f"{value:.12g}"


def render_entry(entry):
    if entry.mode == "exact":
        shown = _render_exact(entry.value)
    elif entry.mode == "numeric":
        shown = _render_numeric(entry.value)
        if entry.residual is not None:
            shown += f" (residual {entry.residual:.12g})"
    elif entry.mode == "flag":
        shown = "yes" if entry.value else "no"
    else:
        shown = entry.value
    return shown


def render_text(report):
    """Plain-text report: sections in fixed order, rationals as p/q, floats with 12 significant digits."""
    lines = [f"# {report.title}"]
    for name, entries in report.ordered():
        lines.append("")
        lines.append(f"[{name}]")
        for entry in entries:
            lines.append(f"{entry.key} = {render_entry(entry)}")
    return "\n".join(lines) + "\n"
