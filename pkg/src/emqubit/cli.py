"""Command-line front end.

Exit status: 0 success, 1 domain error, 2 usage or netlist error. Every
failure prints one line to stderr shaped ``emqubit: error[<Kind>]: <message>``.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .errors import EmQubitError, NetlistError
from .export import chart_document, class_fields, dumps, signal_fields, simulation_document
from .field import Box, ChartOptions, FieldModel, extract_chart, sample_field_lines, sweep_bifurcations
from .gates import (Policy, apply, gate_cnot, gate_filter, gate_not, gate_sqrt_not, gate_switch,
                    DEFAULT_FILTER_DB)
from .net import estimate_resources, parse_netlist, simulate, verify_against_oracle
from .signal import Geometry, SignalState, encode, parse_state, to_field_model
from .svg import emit_chart_svg

PROG = "emqubit"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _bool(text: str) -> bool:
    t = text.lower()
    if t in ("true", "1", "yes", "on"):
        return True
    if t in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _budget(text: str) -> int:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad budget {text!r}") from None
    if not math.isfinite(v) or v < 1 or v != int(v):
        raise argparse.ArgumentTypeError("budget must be a positive integer")
    return int(v)


def _positive(text: str) -> float:
    v = float(text)
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog=PROG, description="Electromagnetic qubit simulator.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="run a netlist")
    s.add_argument("file")
    s.add_argument("--policy", choices=[x.value for x in Policy], default="strict")
    s.add_argument("--budget", type=_budget, default=10**9)
    s.add_argument("--json", action="store_true")

    t = sub.add_parser("truthtable", help="print a gate truth table")
    t.add_argument("gate", choices=["not", "snot", "filter", "switch", "cnot"])
    t.add_argument("--db", type=_positive, default=DEFAULT_FILTER_DB)
    t.add_argument("--json", action="store_true")

    def geometry_flags(q, sep, ground):
        q.add_argument("--sep", type=_positive, default=sep)
        q.add_argument("--height", type=_positive, default=0.5)
        q.add_argument("--ground", type=_bool, default=ground)
        q.add_argument("--radius", type=_positive, default=0.05, help="conductor stop radius")
        q.add_argument("--region", type=float, nargs=4, metavar=("XMIN", "XMAX", "YMIN", "YMAX"))

    c = sub.add_parser("chart", help="extract the topological chart of a mode state")
    c.add_argument("--state", nargs="+", default=["even"],
                   help="even|odd|plus|minus or amp RE_E IM_E RE_O IM_O")
    geometry_flags(c, 1.0, True)
    c.add_argument("--lines", type=int, default=12, help="force lines per conductor in the picture")
    c.add_argument("--svg", metavar="PATH")
    c.add_argument("--json", action="store_true")

    w = sub.add_parser("sweep", help="locate chart bifurcations along a charge family")
    w.add_argument("--family", choices=sorted(FAMILIES), default="even-odd")
    w.add_argument("--range", type=float, nargs=2, default=(0.0, 1.0), metavar=("T0", "T1"))
    w.add_argument("--samples", type=int, default=21)
    w.add_argument("--tol", type=_positive, default=1e-4)
    geometry_flags(w, 2.0, False)
    w.add_argument("--json", action="store_true")

    r = sub.add_parser("resources", help="dry-run cost report for a netlist")
    r.add_argument("file")
    r.add_argument("--budget", type=_budget, default=10**9)
    r.add_argument("--policy", choices=[x.value for x in Policy], default="join")
    r.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="compare a netlist run with the statevector oracle")
    v.add_argument("file")
    v.add_argument("--json", action="store_true")
    return p


# second-conductor strength along t; the first conductor stays at +1
FAMILIES = {
    "even-odd": lambda t: 1.0 - 2.0 * t,
    "two-flip": lambda t: math.cos(2.0 * math.pi * t),
    "constant": lambda t: 1.0,
}


def _geometry(args) -> Geometry:
    return Geometry(args.sep, args.height, args.ground, args.radius)


def _read_netlist(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_netlist(text)
    except NetlistError as e:
        e.args = (f"{path}:{e.line or 0}:{e.column or 0}: {e.message}",)
        raise


def _fmt_c(z: complex) -> str:
    return f"{z.real:+.6f}{z.imag:+.6f}j"


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for k, r in enumerate(rows):
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _signal_row(label: str, s: SignalState) -> list[str]:
    f = class_fields(s)
    cls = f["class"] if f["class"] != "generic" else f"generic({f['theta']:.4f},{f['phi']:.4f})"
    return [label, _fmt_c(s.amp_even), _fmt_c(s.amp_odd), cls, f"{s.norm:.6f}"]


def cmd_simulate(args, out) -> int:
    c = _read_netlist(args.file)
    res = simulate(c, Policy(args.policy), args.budget)
    doc = simulation_document(res)
    if args.json:
        out.write(dumps(doc))
        return 0
    rows = [["line", "amp_even", "amp_odd", "class", "norm"]]
    joint = []
    for o in doc["outputs"]:
        if "name" in o:
            row = _signal_row(o["name"], res.states[o["name"]])
            if o["attenuated"]:
                row[3] += " (attenuated)"
            rows.append(row)
        else:
            joint.append(o)
    if len(rows) > 1:
        out.write(_table(rows))
    for g in joint:
        out.write(f"joint group {' '.join(g['lines'])}:\n")
        for i, (re, im) in enumerate(g["joint_amplitudes"]):
            if abs(complex(re, im)) > 0:
                bits = "".join(str((i >> j) & 1) for j in range(len(g["lines"])))
                out.write(f"  |{bits}>  {_fmt_c(complex(re, im))}\n")
    out.write(_report_text(res.report))
    if res.irreversible:
        out.write("irreversible: a FILTER was applied\n")
    return 0


def _report_text(rep) -> str:
    d = rep.as_dict()
    lines = [f"{k}: {v}" for k, v in d.items() if k != "group_sizes"]
    lines.insert(0, f"group_sizes: {' '.join(map(str, d['group_sizes']))}")
    text = "\n".join(lines) + "\n"
    if rep.over_budget:
        text += f"warning: cost exceeds the budget of {rep.budget}\n"
    return text


def cmd_truthtable(args, out) -> int:
    inputs = ["even", "odd", "plus", "minus"]
    if args.gate == "cnot":
        rows = []
        for c_lab in ("odd", "even"):
            for t_lab in ("odd", "even"):
                c_out, t_out = gate_cnot(encode(c_lab), encode(t_lab))
                bit = {"even": 1, "odd": 0}
                rows.append({
                    "control_in": c_lab, "target_in": t_lab,
                    "control_out": class_fields(c_out)["class"],
                    "target_out": class_fields(t_out)["class"],
                    "logical": f"{bit[c_lab]}{bit[t_lab]} -> "
                               f"{bit[class_fields(c_out)['class']]}{bit[class_fields(t_out)['class']]}",
                })
        if args.json:
            out.write(dumps({"gate": "cnot", "rows": rows}))
        else:
            head = list(rows[0])
            out.write(_table([head] + [[r[k] for k in head] for r in rows]))
        return 0
    if args.gate == "switch":
        rows = []
        for lab in inputs:
            one, zero = gate_switch(encode(lab))
            rows.append({"input": lab, "out_one": signal_fields(one), "out_zero": signal_fields(zero)})
        if args.json:
            out.write(dumps({"gate": "switch", "rows": rows}))
        else:
            table = [["input", "output", "amp_even", "amp_odd", "class", "norm"]]
            for lab in inputs:
                one, zero = gate_switch(encode(lab))
                table.append([lab] + _signal_row("one", one))
                table.append([""] + _signal_row("zero", zero))
            out.write(_table(table))
        return 0
    gate = {"not": gate_not, "snot": gate_sqrt_not}.get(args.gate)
    t = gate() if gate else gate_filter(args.db)
    rows = [{"input": lab, **signal_fields(apply(t, encode(lab)))} for lab in inputs]
    if args.json:
        out.write(dumps({"gate": args.gate, "unitary": t.unitary, "rows": rows}))
    else:
        table = [["input", "amp_even", "amp_odd", "class", "norm"]]
        table += [_signal_row(lab, apply(t, encode(lab))) for lab in inputs]
        out.write(_table(table))
    return 0


def _region(args):
    return Box(*args.region) if args.region else None


def cmd_chart(args, out) -> int:
    try:
        state = parse_state(args.state)
    except ValueError as e:
        raise UsageError(str(e)) from None
    model = to_field_model(state, _geometry(args))
    region = _region(args) or model.default_region()
    chart = extract_chart(model, region)
    lines = sample_field_lines(model, chart.region, args.lines) if args.lines > 0 else []
    if args.svg:
        try:
            emit_chart_svg(chart, lines, args.svg)
        except OSError as e:
            raise IoError(f"cannot write {args.svg}: {e.strerror}") from None
    if args.json:
        out.write(dumps(chart_document(chart, lines)))
        return 0
    out.write(f"class: {chart.class_label}\n")
    rows = [["equilibrium", "x", "y", "kind"]]
    rows += [[f"eq:{i}", f"{e.position[0]:.6f}", f"{e.position[1]:.6f}", e.label]
             for i, e in enumerate(chart.equilibria)]
    out.write(_table(rows) if len(rows) > 1 else "no equilibria\n")
    for s in chart.separatrices:
        out.write(f"separatrix {s.source} -> {s.target}\n")
    if args.svg:
        out.write(f"svg: {args.svg}\n")
    return 0


def cmd_sweep(args, out) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    geo = _geometry(args)
    (x1, y1), (x2, y2) = geo.positions
    q2 = FAMILIES[args.family]

    def family(t):
        return FieldModel([((x1, y1), 1.0), ((x2, y2), q2(t))], geo.ground, geo.conductor_radius)

    region = _region(args)
    if region is None and not geo.ground:
        # the window spanned by the two charges
        half = abs(x2 - x1) / 2
        region = Box(x1, x2, -half, half)
    bifs = sweep_bifurcations(family, tuple(args.range), args.samples, args.tol, region)
    doc = {
        "family": args.family,
        "range": list(args.range),
        "samples": args.samples,
        "tol": args.tol,
        "intervals": [{"lo": b.lo, "hi": b.hi, "before": b.before, "after": b.after} for b in bifs],
    }
    if args.json:
        out.write(dumps(doc))
        return 0
    out.write(f"{len(bifs)} bifurcation interval(s)\n")
    for b in bifs:
        out.write(f"[{b.lo:.6f}, {b.hi:.6f}]\n  before: {b.before}\n  after:  {b.after}\n")
    return 0


def cmd_resources(args, out) -> int:
    c = _read_netlist(args.file)
    rep = estimate_resources(c, Policy(args.policy), args.budget)
    if args.json:
        out.write(dumps({"lines": c.n_lines, **rep.as_dict()}))
    else:
        out.write(f"lines: {c.n_lines}\n" + _report_text(rep))
    if rep.over_budget and args.json:
        print(f"{PROG}: warning[OverBudget]: cost exceeds the budget of {rep.budget}", file=sys.stderr)
    return 0


def cmd_verify(args, out) -> int:
    c = _read_netlist(args.file)
    rep = verify_against_oracle(c)
    d = rep.as_dict()
    if args.json:
        out.write(dumps(d))
    else:
        for k in ("comparable", "reason", "max_amplitude_error", "product_structure_agreement", "ok"):
            out.write(f"{k}: {d[k]}\n")
        for g in d["groups"]:
            out.write(f"group {' '.join(g['lines'])}: "
                      f"{'product' if g['product'] else 'not product'}\n")
    return 0 if rep.comparable else 1


class IoError(EmQubitError):
    pass


COMMANDS = {
    "simulate": cmd_simulate,
    "truthtable": cmd_truthtable,
    "chart": cmd_chart,
    "sweep": cmd_sweep,
    "resources": cmd_resources,
    "verify": cmd_verify,
}


def _fail(kind: str, message: str, code: int) -> int:
    first = str(message).splitlines()[0] if str(message) else kind
    print(f"{PROG}: error[{kind}]: {first}", file=sys.stderr)
    return code


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return _fail("usage", str(e), 2)
    except SystemExit as e:
        # --help
        return int(e.code or 0)
    try:
        with np.errstate(all="ignore"):
            return COMMANDS[args.command](args, out)
    except UsageError as e:
        return _fail("usage", str(e), 2)
    except NetlistError as e:
        return _fail(type(e).__name__, str(e), 2)
    except EmQubitError as e:
        return _fail(type(e).__name__, str(e), 1)


def main() -> None:
    sys.exit(run())
