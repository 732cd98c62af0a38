"""Circuit execution with entanglement-group tracking and cost accounting.

Each group holds a joint vector over the logical basis of its lines. The
vector is flattened in Fortran order over a (2,)*k tensor, so slot j is bit j
of the index; slots follow declaration order. Logical value 1 is the even mode.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import EntanglementNotRepresentable, GroupTooLarge
from ..gates import Policy, control_value, gate_switch, matrix_for
from ..signal import SignalState
from .netlist import Circuit

MAX_GROUP = 20
DEFAULT_BUDGET = 10**9
BASIS_TOL = 1e-9
# mode basis (even, odd) <-> logical basis (0, 1)
_SWAP = np.array([[0, 1], [1, 0]], dtype=complex)


def weight(k: int) -> int:
    """Cost of emulating a k-line group: a lone line is one signal, a joint
    group needs 2^k amplitude channels."""
    return 1 if k == 1 else 2**k


def max_qubits_under_budget(budget: int) -> int:
    budget = int(budget)
    if budget < 1:
        raise ValueError("budget must be at least 1")
    return budget.bit_length() - 1


def to_logical(s: SignalState) -> np.ndarray:
    return np.array([s.amp_odd, s.amp_even], dtype=complex)


def from_logical(v) -> SignalState:
    return SignalState(v[1], v[0])


def lift(mode_matrix: np.ndarray) -> np.ndarray:
    return _SWAP @ mode_matrix @ _SWAP


@dataclass(frozen=True)
class ResourceReport:
    group_sizes: tuple[int, ...]
    signal_line_cost: int
    gate_cost: int
    budget: int = DEFAULT_BUDGET
    merges: int = 0
    max_group_size: int = 1
    estimated: bool = False

    @property
    def max_qubits_under_budget(self) -> int:
        return max_qubits_under_budget(self.budget)

    @property
    def over_budget(self) -> bool:
        return max(self.signal_line_cost, self.gate_cost) > self.budget

    def as_dict(self) -> dict:
        return {
            "group_sizes": list(self.group_sizes),
            "signal_line_cost": self.signal_line_cost,
            "gate_cost": self.gate_cost,
            "budget": self.budget,
            "max_qubits_under_budget": self.max_qubits_under_budget,
            "max_group_size": self.max_group_size,
            "merges": self.merges,
            "over_budget": self.over_budget,
            "estimated": self.estimated,
        }


@dataclass
class Group:
    slots: list[str]
    vec: np.ndarray

    @property
    def k(self) -> int:
        return len(self.slots)

    def tensor(self) -> np.ndarray:
        return self.vec.reshape((2,) * self.k, order="F")

    def set_tensor(self, t: np.ndarray) -> None:
        self.vec = t.reshape(-1, order="F")


@dataclass(frozen=True)
class JointGroup:
    lines: tuple[str, ...]
    amplitudes: np.ndarray = field(compare=False, repr=False)


@dataclass(frozen=True)
class SimulationResult:
    circuit: Circuit
    states: dict
    groups: tuple[JointGroup, ...]
    report: ResourceReport
    irreversible: bool
    # lines whose signal passed through a FILTER
    attenuated: frozenset = frozenset()

    def state_of(self, line: str) -> SignalState:
        if line not in self.states:
            raise KeyError(f"line {line!r} is part of a joint group")
        return self.states[line]

    def group_of(self, line: str) -> JointGroup | None:
        for g in self.groups:
            if line in g.lines:
                return g
        return None


class ExecutionState:
    """Partition of the lines into groups plus the bookkeeping flags."""

    def __init__(self, circuit: Circuit, budget: int = DEFAULT_BUDGET):
        self.order = {n: i for i, n in enumerate(circuit.lines)}
        self.group: dict[str, Group] = {}
        for n in circuit.lines:
            self.group[n] = Group([n], to_logical(circuit.initial_state(n)))
        self.irreversible = False
        self.attenuated: set[str] = set()
        self.gate_cost = 0
        self.merges = 0
        self.max_group = 1
        self.budget = budget

    def groups(self) -> list[Group]:
        seen, out = set(), []
        for n in self.order:
            g = self.group[n]
            if id(g) not in seen:
                seen.add(id(g))
                out.append(g)
        return out

    def apply_single(self, line: str, logical_u: np.ndarray) -> None:
        g = self.group[line]
        j = g.slots.index(line)
        t = np.tensordot(logical_u, g.tensor(), axes=([1], [j]))
        g.set_tensor(np.moveaxis(t, 0, j))
        self.gate_cost += weight(g.k)

    def control_probabilities(self, line: str) -> tuple[float, float]:
        g = self.group[line]
        j = g.slots.index(line)
        p = np.moveaxis(np.abs(g.tensor()) ** 2, j, 0).reshape(2, -1).sum(axis=1)
        return float(p[0]), float(p[1])

    def merge(self, a: str, b: str) -> Group:
        ga, gb = self.group[a], self.group[b]
        if ga is gb:
            return ga
        k = ga.k + gb.k
        if k > MAX_GROUP:
            raise GroupTooLarge(f"joint group of {k} lines exceeds the cap of {MAX_GROUP}")
        slots = ga.slots + gb.slots
        t = np.kron(gb.vec, ga.vec).reshape((2,) * k, order="F")
        perm = sorted(range(k), key=lambda i: self.order[slots[i]])
        merged = Group([slots[i] for i in perm], np.empty(0))
        merged.set_tensor(np.transpose(t, perm))
        for n in merged.slots:
            self.group[n] = merged
        self.merges += 1
        self.max_group = max(self.max_group, k)
        return merged

    def cnot_in_group(self, ctrl: str, tgt: str) -> None:
        g = self.group[ctrl]
        c, t = g.slots.index(ctrl), g.slots.index(tgt)
        tensor = g.tensor().copy()
        sel = [slice(None)] * g.k
        sel[c] = 1
        sub = tensor[tuple(sel)]
        tensor[tuple(sel)] = np.flip(sub, axis=t - (t > c))
        g.set_tensor(tensor)
        self.gate_cost += weight(g.k)

    def cnot(self, ctrl: str, tgt: str, policy: Policy) -> None:
        p0, p1 = self.control_probabilities(ctrl)
        value = control_value(SignalState(np.sqrt(p1), np.sqrt(p0)), BASIS_TOL)
        if value is not None and self.group[ctrl] is not self.group[tgt]:
            if value == 1:
                self.apply_single(tgt, _SWAP)
            return
        if self.group[ctrl] is not self.group[tgt]:
            if policy is Policy.STRICT_BASIS:
                raise EntanglementNotRepresentable(
                    f"CNOT control {ctrl!r} is superposed (p1={p1 / (p0 + p1):.6g}); "
                    "use the join policy")
            self.merge(ctrl, tgt)
        self.cnot_in_group(ctrl, tgt)

    def switch(self, src: str, one: str, zero: str) -> None:
        for n in (src, one, zero):
            if self.group[n].k != 1:
                raise EntanglementNotRepresentable(
                    f"SWITCH cannot split line {n!r}; it belongs to a joint group")
        out_one, out_zero = gate_switch(from_logical(self.group[src].vec))
        self.group[one].vec = to_logical(out_one)
        self.group[zero].vec = to_logical(out_zero)
        self.group[src].vec = np.zeros(2, dtype=complex)
        if src in self.attenuated:
            self.attenuated.update((one, zero))
        self.gate_cost += 1

    def report(self, estimated: bool = False) -> ResourceReport:
        sizes = tuple(g.k for g in self.groups())
        return ResourceReport(sizes, sum(weight(k) for k in sizes), self.gate_cost,
                              self.budget, self.merges, self.max_group, estimated)


def simulate(c: Circuit, policy: Policy | str = Policy.STRICT_BASIS,
             budget: int = DEFAULT_BUDGET) -> SimulationResult:
    policy = Policy(policy)
    st = ExecutionState(c, int(budget))
    for op in c.gates:
        name = op.kind.name
        if name == "CNOT":
            st.cnot(*op.operands, policy)
        elif name == "SWITCH":
            st.switch(*op.operands)
        else:
            st.apply_single(op.operands[0], lift(matrix_for(op.kind).entries))
            if name == "FILTER":
                st.irreversible = True
                st.attenuated.add(op.operands[0])

    states, groups = {}, []
    for g in st.groups():
        if g.k == 1:
            states[g.slots[0]] = from_logical(g.vec)
        else:
            a = np.array(g.vec)
            a.setflags(write=False)
            groups.append(JointGroup(tuple(g.slots), a))
    return SimulationResult(c, states, tuple(groups), st.report(), st.irreversible,
                            frozenset(st.attenuated))


def estimate_resources(c: Circuit, policy: Policy | str = Policy.STRICT_BASIS,
                       budget: int = DEFAULT_BUDGET) -> ResourceReport:
    """Grouping dry run: lone lines are followed exactly (two amplitudes each),
    joint groups only by membership. A CNOT controlled from inside a joint
    group is assumed to entangle, so the result bounds the real cost from above.
    """
    policy = Policy(policy)
    mode = {n: c.initial_state(n).vector for n in c.lines}
    parent = {n: n for n in c.lines}
    size = {n: 1 for n in c.lines}
    gate_cost = merges = 0
    max_group = 1

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for op in c.gates:
        name = op.kind.name
        if name == "CNOT":
            ctrl, tgt = op.operands
            rc, rt = find(ctrl), find(tgt)
            value = None
            if size[rc] == 1:
                value = control_value(SignalState.from_vector(mode[ctrl]), BASIS_TOL)
            if value is not None and rc != rt:
                if value == 1:
                    gate_cost += weight(size[rt])
                    if size[rt] == 1:
                        mode[tgt] = mode[tgt][::-1].copy()
                continue
            if rc != rt:
                if policy is Policy.STRICT_BASIS:
                    raise EntanglementNotRepresentable(
                        f"CNOT control {ctrl!r} is superposed; use the join policy")
                parent[rt] = rc
                size[rc] += size[rt]
                merges += 1
                max_group = max(max_group, size[rc])
            gate_cost += weight(size[rc])
        elif name == "SWITCH":
            src, one, zero = op.operands
            for n in op.operands:
                if size[find(n)] != 1:
                    raise EntanglementNotRepresentable(
                        f"SWITCH cannot split line {n!r}; it belongs to a joint group")
            s1, s0 = gate_switch(SignalState.from_vector(mode[src]))
            mode[one], mode[zero] = s1.vector, s0.vector
            mode[src] = np.zeros(2, dtype=complex)
            gate_cost += 1
        else:
            line = op.operands[0]
            r = find(line)
            if size[r] == 1:
                mode[line] = matrix_for(op.kind).entries @ mode[line]
            gate_cost += weight(size[r])

    roots = []
    for n in c.lines:
        r = find(n)
        if r not in roots:
            roots.append(r)
    sizes = tuple(size[r] for r in roots)
    return ResourceReport(sizes, sum(weight(k) for k in sizes), gate_cost, int(budget),
                          merges, max_group, estimated=True)
