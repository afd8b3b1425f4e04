"""Deterministic CSV/JSON serialization of result tables with a run manifest."""

import json
from dataclasses import dataclass, field

from . import __version__

SIGNIFICANT_DIGITS = 12


def format_float(x):
    """Shortest round-trip decimal of ``x`` after rounding to 12 significant digits."""
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    value = float(f"{float(x):.{SIGNIFICANT_DIGITS}g}")
    if value == 0:
        value = 0.0
    return repr(value)


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return format_float(x)


@dataclass
class RunManifest:
    command: str
    parameters: dict
    artifacts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    version: str = __version__

    def lines(self):
        out = [f"command: {self.command}", f"version: {self.version}"]
        out += [f"{k}: {_cell(v) if not isinstance(v, str) else v}" for k, v in self.parameters.items()]
        out += [f"{k}: {v}" for k, v in self.artifacts.items()]
        out += [f"note: {n}" for n in self.notes]
        return out

    def as_dict(self):
        return {
            "command": self.command,
            "version": self.version,
            "parameters": {k: v if isinstance(v, str) else _json_value(v)
                           for k, v in self.parameters.items()},
            "artifacts": dict(self.artifacts),
            "notes": list(self.notes),
        }


def _json_value(x):
    if x is None or isinstance(x, (str, bool)):
        return x
    if isinstance(x, int):
        return x
    return float(format_float(x))


def render_csv(manifest, columns, rows):
    lines = [f"# {line}" for line in manifest.lines()]
    lines.append(",".join(columns))
    lines += [",".join(_cell(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def render_json(manifest, columns, rows):
    doc = {
        "manifest": manifest.as_dict(),
        "columns": list(columns),
        "rows": [[_json_value(x) for x in row] for row in rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def render(fmt, manifest, columns, rows):
    if fmt == "csv":
        return render_csv(manifest, columns, rows)
    if fmt == "json":
        return render_json(manifest, columns, rows)
    raise ValueError(f"unknown output format {fmt!r}")
