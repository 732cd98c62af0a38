"""Deterministic JSON text and structured documents for charts, sweeps and runs."""
from __future__ import annotations

import json
import math
from enum import Enum

import numpy as np

from .signal import Generic, SignalState, classify


def _float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    if x == 0:
        return "0.0"
    text = format(x, ".17g")
    # keep a float marker so readers do not see an integer
    return text if ("e" in text or "." in text) else text + ".0"


def dumps(obj, indent: int = 2) -> str:
    """JSON with every float at 17 significant digits. The stdlib encoder
    writes shortest-repr floats and has no hook to change that."""
    out: list[str] = []

    def emit(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if isinstance(o, bool) or o is None:
            out.append(json.dumps(o))
        elif isinstance(o, (int, np.integer)):
            out.append(str(int(o)))
        elif isinstance(o, (float, np.floating)):
            out.append(_float(float(o)))
        elif isinstance(o, (complex, np.complexfloating)):
            emit([o.real, o.imag], level)
        elif isinstance(o, str):
            out.append(json.dumps(o))
        elif isinstance(o, Enum):
            out.append(json.dumps(str(o.value)))
        elif isinstance(o, dict):
            if not o:
                out.append("{}")
                return
            out.append("{\n")
            for i, (k, v) in enumerate(o.items()):
                out.append(f"{pad}{json.dumps(str(k))}: ")
                emit(v, level + 1)
                out.append(",\n" if i < len(o) - 1 else "\n")
            out.append(end + "}")
        elif isinstance(o, (list, tuple, np.ndarray)):
            seq = list(o)
            if not seq:
                out.append("[]")
            elif all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
                out.append("[")
                for i, v in enumerate(seq):
                    emit(v, level + 1)
                    if i < len(seq) - 1:
                        out.append(", ")
                out.append("]")
            else:
                out.append("[\n")
                for i, v in enumerate(seq):
                    out.append(pad)
                    emit(v, level + 1)
                    out.append(",\n" if i < len(seq) - 1 else "\n")
                out.append(end + "]")
        else:
            raise TypeError(f"cannot serialize {type(o).__name__}")

    emit(obj, 0)
    return "".join(out) + "\n"


def _points(arr) -> list:
    return [[float(x), float(y)] for x, y in np.asarray(arr)]


def chart_document(chart, field_lines=()) -> dict:
    doc = {
        "equilibria": [
            {"x": e.position[0], "y": e.position[1], "kind": e.label} for e in chart.equilibria
        ],
        "separatrices": [
            {"from": s.source, "to": s.target, "points": _points(s.points)}
            for s in chart.separatrices
        ],
    }
    if field_lines:
        doc["field_lines"] = [
            {"termination": ln.termination.value, "points": _points(ln.points)} for ln in field_lines
        ]
    doc["class_label"] = chart.class_label
    doc["reliable"] = chart.reliable
    return doc


def class_fields(s: SignalState, tol: float = 1e-3) -> dict:
    cls = classify(s, tol)
    if isinstance(cls, Generic):
        return {"class": "generic", "theta": cls.theta, "phi": cls.phi}
    return {"class": cls.value}


def signal_fields(s: SignalState) -> dict:
    return {
        "amp_even": [s.amp_even.real, s.amp_even.imag],
        "amp_odd": [s.amp_odd.real, s.amp_odd.imag],
        **class_fields(s),
        "norm": s.norm,
    }


def simulation_document(result) -> dict:
    wanted = result.circuit.outputs or result.circuit.lines
    outputs, seen = [], set()
    for name in wanted:
        if name in result.states:
            outputs.append({"name": name, **signal_fields(result.states[name]),
                            "attenuated": name in result.attenuated})
            continue
        g = result.group_of(name)
        if g.lines in seen:
            continue
        seen.add(g.lines)
        outputs.append({
            "lines": list(g.lines),
            "joint_amplitudes": [[a.real, a.imag] for a in g.amplitudes],
        })
    return {
        "outputs": outputs,
        "irreversible": result.irreversible,
        "report": result.report.as_dict(),
    }
