from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from emqubit.errors import ParseError, ValidationError
from emqubit.gates import CNOT, NOT, SWITCH, Filter
from emqubit.net import Circuit, GateOp, format_netlist, parse_netlist
from emqubit.signal import Label, SignalState, encode

NETLISTS = Path(__file__).resolve().parents[1] / "netlists"


def test_minimal_program():
    c = parse_netlist("NET q0\nIN q0 even\nNOT q0\nOUT q0")
    assert c.lines == ("q0",)
    assert c.initial_states == {"q0": encode(Label.EVEN)}
    assert c.gates == (GateOp(NOT, ("q0",)),)
    assert c.outputs == ("q0",)


def test_comments_case_and_defaults():
    c = parse_netlist("# demo\nnet a   # first\nNet b\ncnot a b\nfilter b\nout b\n")
    assert c.gates == (GateOp(CNOT, ("a", "b")), GateOp(Filter(40.0), ("b",)))
    assert c.initial_state("a") == encode(Label.ODD)


def test_switch_destinations_start_empty():
    c = parse_netlist((NETLISTS / "switch_demo.net").read_text())
    assert c.gates[0].kind == SWITCH and c.gates[0].operands == ("s", "one", "zero")
    assert c.initial_state("one") == SignalState(0, 0)
    assert c.initial_state("s") == encode(Label.PLUS)


def test_amp_literal():
    c = parse_netlist("NET a\nIN a amp 0.6 0 0 -0.8\n")
    assert c.initial_state("a") == SignalState(0.6, -0.8j)


def test_undeclared_line_is_named_with_its_line_number():
    with pytest.raises(ValidationError) as err:
        parse_netlist("NET q0\nIN q0 even\nNOT q9\n")
    assert "q9" in str(err.value)
    assert err.value.line == 3 and err.value.column == 5
    assert str(err.value).startswith("line 3, col 5:")


@pytest.mark.parametrize("text, line, col", [
    ("NET a\nFROB a\n", 2, 1),
    ("NET a\nNOT\n", 2, 4),
    ("NET a\nNOT a extra\n", 2, 7),
    ("NET a\nIN a sideways\n", 2, 6),
    ("NET a\nIN a amp 1 0 x 0\n", 2, 14),
    ("NET a\nFILTER a loud\n", 2, 10),
    ("NET a\nNET b\nNET c\nSWITCH a b c\n", 4, 10),
    ("NET 9a\n", 1, 5),
    ("NET a\nIN a amp 1 0 inf 0\n", 2, 14),
])
def test_parse_errors_point_at_the_offending_token(text, line, col):
    with pytest.raises(ParseError) as err:
        parse_netlist(text)
    assert (err.value.line, err.value.column) == (line, col)


@pytest.mark.parametrize("text, line", [
    ("NET a\nNET a\n", 2),
    ("NET a\nNET b\nCNOT a a\n", 3),
    ("NET a\nIN a even\nIN a odd\n", 3),
    ("NET a\nNOT a\nIN a even\n", 3),
    ("NET a\nOUT a\nOUT a\n", 3),
    ("NET a\nFILTER a -3\n", 2),
    ("NET s\nNET b\nSWITCH s -> s b\n", 3),
    ("NET s\nNET b\nNET c\nIN b even\nSWITCH s -> b c\n", 5),
    ("NET s\nNET b\nNET c\nNOT c\nSWITCH s -> b c\n", 5),
    ("NET s\nNET t\nNET b\nNET c\nSWITCH s -> b c\nSWITCH t -> c b\n", 6),
    ("# nothing\n", None),
])
def test_validation_errors(text, line):
    with pytest.raises(ValidationError) as err:
        parse_netlist(text)
    assert err.value.line == line


def test_demo_netlists_round_trip():
    for path in sorted(NETLISTS.glob("*.net")):
        c = parse_netlist(path.read_text())
        text = format_netlist(c)
        assert parse_netlist(text) == c
        assert format_netlist(parse_netlist(text)) == text


_NAMES = [f"l{i}" for i in range(6)]
_finite = st.floats(-2, 2, allow_nan=False)


@st.composite
def circuits(draw):
    n = draw(st.integers(1, 6))
    lines = _NAMES[:n]
    literal = st.sampled_from(["even", "odd", "plus", "minus"]).map(encode) | st.builds(
        lambda a, b, c, d: SignalState(complex(a, b), complex(c, d)), _finite, _finite, _finite, _finite)
    inputs = {name: draw(literal) for name in lines if draw(st.booleans())}
    one = st.sampled_from(lines)
    ops = [
        st.builds(lambda q: GateOp(NOT, (q,)), one),
        st.builds(lambda q: GateOp(Filter(40.0), (q,)), one),
        st.builds(lambda q, db: GateOp(Filter(db), (q,)), one, st.floats(0.5, 90)),
    ]
    if n > 1:
        ops.append(st.lists(one, min_size=2, max_size=2, unique=True)
                   .map(lambda p: GateOp(CNOT, tuple(p))))
    gates = draw(st.lists(st.one_of(ops), max_size=10))
    outputs = draw(st.lists(one, unique=True))
    return Circuit(tuple(lines), inputs, tuple(gates), tuple(outputs))


@given(circuits())
def test_format_parse_round_trip(c):
    text = format_netlist(c)
    back = parse_netlist(text)
    assert back == c
    assert format_netlist(back) == text
