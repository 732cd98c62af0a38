"""Line-oriented netlist format.

    NET <name>
    IN <name> <even|odd|plus|minus|amp re_e im_e re_o im_o>
    NOT <name> | SNOT <name> | FILTER <name> [db]
    SWITCH <name> -> <name1> <name0>
    CNOT <ctrl> <tgt>
    OUT <name>

``#`` starts a comment. Keywords are case-insensitive. A line without ``IN``
starts as ``odd`` (logical 0) unless it is a switch destination, which starts
empty until the switch writes it.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from ..errors import ParseError, ValidationError
from ..gates import CNOT, NOT, SNOT, SWITCH, Filter, GateKind
from ..signal import Label, SignalState, encode

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\[\]]*\Z")
_TOKEN = re.compile(r"\S+")
_LITERALS = ("even", "odd", "plus", "minus")


@dataclass(frozen=True)
class GateOp:
    kind: GateKind
    operands: tuple[str, ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Circuit:
    lines: tuple[str, ...]
    initial_states: dict = field(hash=False)
    gates: tuple[GateOp, ...] = ()
    outputs: tuple[str, ...] = ()

    @property
    def switch_destinations(self) -> frozenset[str]:
        return frozenset(n for g in self.gates if g.kind == SWITCH for n in g.operands[1:])

    def initial_state(self, name: str) -> SignalState:
        if name in self.initial_states:
            return self.initial_states[name]
        if name in self.switch_destinations:
            return SignalState(0, 0)
        return encode(Label.ODD)

    @property
    def n_lines(self) -> int:
        return len(self.lines)


def _tokens(text: str):
    for m in _TOKEN.finditer(text):
        yield m.group(), m.start() + 1


def _number(tok: str, col: int, lineno: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", lineno, col) from None
    if not math.isfinite(v):
        raise ParseError(f"number must be finite, got {tok!r}", lineno, col)
    return v


def parse_netlist(text: str) -> Circuit:
    lines: list[str] = []
    declared: dict[str, int] = {}
    inputs: dict[str, SignalState] = {}
    gates: list[GateOp] = []
    outputs: list[str] = []
    # destination -> line of the SWITCH that writes it
    written: dict[str, int] = {}
    touched: set[str] = set()

    def name_at(tok, col, lineno):
        if not _NAME.match(tok):
            raise ParseError(f"bad line name {tok!r}", lineno, col)
        return tok

    def ref(tok, col, lineno):
        name = name_at(tok, col, lineno)
        if name not in declared:
            raise ValidationError(f"undeclared line {name!r}", lineno, col)
        return name

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = list(_tokens(body))
        if not toks:
            continue
        (kw, kcol), args = toks[0], toks[1:]
        op = kw.upper()

        def arity(n, usage):
            if len(args) != n:
                col = args[n][1] if len(args) > n else kcol + len(kw)
                raise ParseError(f"{op} expects {usage}", lineno, col)

        if op == "NET":
            arity(1, "one line name")
            name = name_at(*args[0], lineno)
            if name in declared:
                raise ValidationError(
                    f"duplicate line {name!r} (first declared on line {declared[name]})",
                    lineno, args[0][1])
            declared[name] = lineno
            lines.append(name)
        elif op == "IN":
            if len(args) < 2:
                raise ParseError("IN expects a line name and a state", lineno, kcol)
            name = ref(*args[0], lineno)
            if name in inputs:
                raise ValidationError(f"duplicate IN for {name!r}", lineno, args[0][1])
            if name in touched:
                raise ValidationError(f"IN for {name!r} after it was used", lineno, args[0][1])
            lit, lcol = args[1]
            if lit.lower() == "amp":
                if len(args) != 6:
                    raise ParseError("amp expects four numbers: re_e im_e re_o im_o", lineno, lcol)
                re_e, im_e, re_o, im_o = (_number(t, c, lineno) for t, c in args[2:])
                state = SignalState(complex(re_e, im_e), complex(re_o, im_o))
            elif lit.lower() in _LITERALS:
                if len(args) != 2:
                    raise ParseError(f"unexpected token {args[2][0]!r}", lineno, args[2][1])
                state = encode(lit.lower())
            else:
                raise ParseError(f"unknown state literal {lit!r}", lineno, lcol)
            inputs[name] = state
        elif op in ("NOT", "SNOT"):
            arity(1, "one line name")
            name = ref(*args[0], lineno)
            gates.append(GateOp(NOT if op == "NOT" else SNOT, (name,), lineno))
            touched.add(name)
        elif op == "FILTER":
            if len(args) not in (1, 2):
                col = args[2][1] if len(args) > 2 else kcol + len(kw)
                raise ParseError("FILTER expects a line name and an optional dB value", lineno, col)
            name = ref(*args[0], lineno)
            kind = Filter()
            if len(args) == 2:
                db = _number(*args[1], lineno)
                if db <= 0:
                    raise ValidationError("filter suppression must be positive", lineno, args[1][1])
                kind = Filter(db)
            gates.append(GateOp(kind, (name,), lineno))
            touched.add(name)
        elif op == "SWITCH":
            if len(args) != 4 or args[1][0] != "->":
                col = args[1][1] if len(args) > 1 else kcol + len(kw)
                raise ParseError("SWITCH expects <name> -> <name1> <name0>", lineno, col)
            src = ref(*args[0], lineno)
            dst = [ref(*args[2], lineno), ref(*args[3], lineno)]
            for (tok, col), d in zip(args[2:], dst):
                if d == src or dst[0] == dst[1]:
                    raise ValidationError("SWITCH needs three distinct lines", lineno, col)
                if d in inputs:
                    raise ValidationError(f"switch destination {d!r} already has an IN", lineno, col)
                if d in written:
                    raise ValidationError(
                        f"line {d!r} already written by SWITCH on line {written[d]}", lineno, col)
                if d in touched:
                    raise ValidationError(f"switch destination {d!r} used before the switch",
                                          lineno, col)
            for d in dst:
                written[d] = lineno
            touched.update([src, *dst])
            gates.append(GateOp(SWITCH, (src, *dst), lineno))
        elif op == "CNOT":
            arity(2, "control and target line names")
            ctrl = ref(*args[0], lineno)
            tgt = ref(*args[1], lineno)
            if ctrl == tgt:
                raise ValidationError("CNOT control and target must differ", lineno, args[1][1])
            gates.append(GateOp(CNOT, (ctrl, tgt), lineno))
            touched.update([ctrl, tgt])
        elif op == "OUT":
            arity(1, "one line name")
            name = ref(*args[0], lineno)
            if name in outputs:
                raise ValidationError(f"duplicate OUT for {name!r}", lineno, args[0][1])
            outputs.append(name)
        else:
            raise ParseError(f"unknown statement {kw!r}", lineno, kcol)

    if not lines:
        raise ValidationError("netlist declares no lines")
    ordered = {n: inputs[n] for n in lines if n in inputs}
    return Circuit(tuple(lines), ordered, tuple(gates), tuple(outputs))


def _literal(s: SignalState) -> str:
    for name in _LITERALS:
        if s == encode(name):
            return name
    parts = (s.amp_even.real, s.amp_even.imag, s.amp_odd.real, s.amp_odd.imag)
    return "amp " + " ".join(repr(float(p)) for p in parts)


def format_netlist(c: Circuit) -> str:
    """Canonical text; ``parse_netlist(format_netlist(c)) == c``."""
    out = [f"NET {n}" for n in c.lines]
    out += [f"IN {n} {_literal(s)}" for n, s in c.initial_states.items()]
    for g in c.gates:
        name = g.kind.name
        if name == "FILTER":
            out.append(f"FILTER {g.operands[0]} {g.kind.suppression_db!r}")
        elif name == "SWITCH":
            src, d1, d0 = g.operands
            out.append(f"SWITCH {src} -> {d1} {d0}")
        else:
            out.append(" ".join([name, *g.operands]))
    out += [f"OUT {n}" for n in c.outputs]
    return "\n".join(out) + "\n"
