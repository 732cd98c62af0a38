import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given

from emqubit import oracle
from emqubit.errors import EntanglementNotRepresentable, GroupTooLarge
from emqubit.net import estimate_resources, parse_netlist, simulate
from emqubit.gates import Policy, matrix_for
from emqubit.net.simulate import MAX_GROUP, ExecutionState, lift, max_qubits_under_budget, weight
from emqubit.signal import Label, SignalState, classify, encode
from circuits import circuits, random_circuit

NETLISTS = Path(__file__).resolve().parents[1] / "netlists"
R = 1 / math.sqrt(2)


def ghz(n):
    body = [f"NET q{i}" for i in range(n)] + ["IN q0 plus"]
    body += [f"CNOT q{i} q{i + 1}" for i in range(n - 1)]
    return parse_netlist("\n".join(body))


def test_not_inverts_even():
    r = simulate(parse_netlist("NET q0\nIN q0 even\nNOT q0\nOUT q0"))
    assert r.state_of("q0") == encode(Label.ODD)
    assert r.report.signal_line_cost == 1 and not r.irreversible


def test_sqrt_not_twice_on_odd():
    r = simulate(parse_netlist("NET q0\nIN q0 odd\nSNOT q0\nSNOT q0"))
    assert classify(r.state_of("q0"), 1e-9) is Label.EVEN


def test_bell_pair_needs_a_joint_group():
    c = parse_netlist((NETLISTS / "bell.net").read_text())
    with pytest.raises(EntanglementNotRepresentable):
        simulate(c, Policy.STRICT_BASIS)
    r = simulate(c, "join")
    assert r.report.group_sizes == (2,) and r.report.signal_line_cost == 4
    (g,) = r.groups
    assert g.lines == ("a", "b")
    q = oracle.run(oracle.init(2, [oracle.KET_PLUS, oracle.KET0]), [oracle.cnot(0, 1)])
    assert np.allclose(g.amplitudes, q.amplitudes, atol=1e-15)
    with pytest.raises(KeyError):
        r.state_of("a")


def test_basis_cnot_stays_classical():
    r = simulate(parse_netlist((NETLISTS / "cnot_demo.net").read_text()))
    assert r.state_of("tgt") == encode(Label.EVEN)
    assert r.report.group_sizes == (1, 1) and r.report.merges == 0


def test_filter_marks_run_irreversible():
    r = simulate(parse_netlist((NETLISTS / "filter_demo.net").read_text()))
    assert r.irreversible
    assert r.state_of("o").norm == pytest.approx(0.01)
    assert r.attenuated == {"e", "o", "p"}


def test_switch_separates_modes():
    r = simulate(parse_netlist((NETLISTS / "switch_demo.net").read_text()))
    assert r.state_of("one") == SignalState(R, 0)
    assert r.state_of("zero") == SignalState(0, R)
    assert r.state_of("s") == SignalState(0, 0)
    bad = parse_netlist("NET a\nNET b\nNET x\nNET y\nIN a plus\nCNOT a b\nSWITCH a -> x y")
    with pytest.raises(EntanglementNotRepresentable):
        simulate(bad, "join")


def test_runs_are_deterministic():
    rng = np.random.default_rng(0)
    for _ in range(10):
        c = random_circuit(rng, 5, 20, ("NOT", "SNOT", "CNOT", "FILTER"))
        a, b = simulate(c, "join"), simulate(c, "join")
        assert a.states == b.states and a.report == b.report
        for ga, gb in zip(a.groups, b.groups):
            assert ga.lines == gb.lines and ga.amplitudes.tobytes() == gb.amplitudes.tobytes()


@given(circuits())
def test_groups_only_merge(c):
    st = ExecutionState(c)
    seen = {n: {n} for n in c.lines}
    for op in c.gates:
        if op.kind.name == "CNOT":
            st.cnot(*op.operands, Policy.JOIN_GROUPS)
        else:
            st.apply_single(op.operands[0], lift(matrix_for(op.kind).entries))
        for n in c.lines:
            now = set(st.group[n].slots)
            assert seen[n] <= now
            seen[n] = now
    assert sum(g.k for g in st.groups()) == c.n_lines


@given(circuits())
def test_cost_law(c):
    r = simulate(c, "join")
    rep = r.report
    assert rep.signal_line_cost == sum(weight(k) for k in rep.group_sizes)
    assert sum(rep.group_sizes) == c.n_lines
    assert (rep.signal_line_cost == c.n_lines) == (rep.merges == 0)
    assert r.irreversible == any(op.kind.name == "FILTER" for op in c.gates)


@given(circuits())
def test_norm_never_grows(c):
    r = simulate(c, "join")
    total = math.prod([s.norm for s in r.states.values()] +
                      [float(np.linalg.norm(g.amplitudes)) for g in r.groups])
    if r.irreversible:
        assert total <= 1 + 1e-12
    else:
        assert total == pytest.approx(1.0, abs=1e-12)


@given(circuits())
def test_estimate_bounds_simulation(c):
    sim = simulate(c, "join").report
    est = estimate_resources(c, "join")
    assert est.estimated
    assert est.signal_line_cost >= sim.signal_line_cost
    assert est.gate_cost >= sim.gate_cost
    assert est.max_group_size >= sim.max_group_size


def test_ghz_chain_cost():
    for n in (2, 5, 12):
        c = ghz(n)
        est = estimate_resources(c, "join")
        assert est.group_sizes == (n,) and est.signal_line_cost == 2**n
        sim = simulate(c, "join").report
        assert sim.signal_line_cost == 2**n and sim.gate_cost == est.gate_cost


def test_superposition_only_circuits_cost_linear():
    rng = np.random.default_rng(1)
    for n in (1, 10, 30, 200):
        c = random_circuit(rng, n, 3 * n, ("NOT", "SNOT"))
        rep = estimate_resources(c)
        assert rep.signal_line_cost == n
        assert simulate(c).report.signal_line_cost == n


def test_group_cap():
    with pytest.raises(GroupTooLarge):
        simulate(ghz(MAX_GROUP + 1), "join")
    assert estimate_resources(ghz(30), "join").signal_line_cost == 2**30


def test_budget_rule():
    assert max_qubits_under_budget(10**9) == 29
    assert 2**29 <= 10**9 < 2**30
    assert max_qubits_under_budget(1) == 0
    with pytest.raises(ValueError):
        max_qubits_under_budget(0)
    rep = estimate_resources(ghz(30), "join", budget=10**9)
    assert rep.max_qubits_under_budget == 29 and rep.over_budget
