"""JSON and CSV emitters with a reproducibility manifest.

Floats are written with 17 significant digits so every double survives a
round trip.  Nothing time- or host-dependent goes into the manifest unless
explicitly requested, which keeps outputs byte-identical between runs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int | None = None
    truncation: dict = field(default_factory=dict)
    version: str = __version__
    wall_time_s: float | None = None

    def as_dict(self) -> dict:
        out = {
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "truncation": self.truncation,
            "version": self.version,
        }
        if self.wall_time_s is not None:
            out["wall_time_s"] = self.wall_time_s
        return out


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return "%.17g" % x


def _emit(obj, indent: int, level: int, out: list[str]) -> None:
    pad = " " * (indent * (level + 1))
    end_pad = " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        out.append(json.dumps(None if obj is None else bool(obj)))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(pad + json.dumps(str(k)) + ": ")
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end_pad + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(items):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(end_pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with fixed key order (as given) and 17-digit floats."""
    out: list[str] = []
    _emit(obj, indent, 0, out)
    return "".join(out) + "\n"


def json_document(payload: dict, manifest: RunManifest) -> str:
    return dumps({**payload, "manifest": manifest.as_dict()})


def csv_document(header: list[str], rows, manifest: RunManifest) -> str:
    """CSV with a ``#`` comment line carrying the manifest as compact JSON."""
    buf = io.StringIO()
    compact = dumps(manifest.as_dict(), indent=0).replace("\n", "")
    buf.write("# manifest: " + compact + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(float(v)) if isinstance(v, (float, np.floating)) else v
                         for v in row])
    return buf.getvalue()
