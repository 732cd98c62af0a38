"""Cross-check a simulated circuit against the statevector oracle."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import oracle
from ..gates import Policy, matrix_for
from .netlist import Circuit
from .simulate import lift, simulate, to_logical


@dataclass(frozen=True)
class VerifyReport:
    comparable: bool
    max_amplitude_error: float = float("nan")
    product_structure_agreement: bool = False
    # per simulator group: (lines, product across the group boundary, internally product)
    groups: tuple = field(default=())
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.comparable and self.product_structure_agreement and self.max_amplitude_error <= 1e-9

    def as_dict(self) -> dict:
        return {
            "comparable": self.comparable,
            "reason": self.reason,
            "max_amplitude_error": self.max_amplitude_error,
            "product_structure_agreement": self.product_structure_agreement,
            "groups": [
                {"lines": list(lines), "separable_from_rest": sep, "product": prod}
                for lines, sep, prod in self.groups
            ],
            "ok": self.ok,
        }


def align_phase(v: np.ndarray, k: int | None = None) -> np.ndarray:
    """Rotate so amplitude ``k`` (default: the largest) is real and positive."""
    if k is None:
        k = int(np.argmax(np.abs(v)))
    if v[k] == 0:
        return v
    return v * (abs(v[k]) / v[k])


def oracle_gates(c: Circuit):
    pos = {n: i for i, n in enumerate(c.lines)}
    for op in c.gates:
        if op.kind.name == "CNOT":
            yield oracle.cnot(pos[op.operands[0]], pos[op.operands[1]])
        else:
            yield oracle.single(lift(matrix_for(op.kind).entries), pos[op.operands[0]])


def verify_against_oracle(c: Circuit, policy: Policy | str = Policy.JOIN_GROUPS) -> VerifyReport:
    n = c.n_lines
    if n > oracle.MAX_QUBITS:
        return VerifyReport(False, reason=f"{n} lines exceed the oracle limit of {oracle.MAX_QUBITS}")
    if any(op.kind.name in ("FILTER", "SWITCH") for op in c.gates):
        return VerifyReport(False, reason="circuit contains non-unitary FILTER or SWITCH gates")
    init = [to_logical(c.initial_state(name)) for name in c.lines]
    if any(np.linalg.norm(v) == 0 for v in init):
        return VerifyReport(False, reason="a line starts empty")

    q = oracle.run(oracle.init(n, init), oracle_gates(c))
    result = simulate(c, policy)

    # reassemble the simulator's product of groups in qubit order
    pos = {name: i for i, name in enumerate(c.lines)}
    parts = [([name], to_logical(s)) for name, s in result.states.items()]
    parts += [(list(g.lines), np.array(g.amplitudes)) for g in result.groups]
    slots, full = [], np.ones(1, dtype=complex)
    for lines, vec in parts:
        full = np.kron(vec, full)
        slots += lines
    t = full.reshape((2,) * n, order="F")
    t = np.transpose(t, [slots.index(name) for name in c.lines])
    full = t.reshape(-1, order="F")
    full = full / np.linalg.norm(full)
    # one reference index for both sides; near-ties in magnitude would
    # otherwise pick different amplitudes and fake a phase error
    k = int(np.argmax(np.abs(q.amplitudes)))
    err = float(np.max(np.abs(align_phase(full, k) - align_phase(q.amplitudes, k))))

    agree = True
    groups = []
    for lines, _ in parts:
        idx = [pos[name] for name in lines]
        sep = len(idx) == n or oracle.is_product_across(q, idx)
        prod = len(idx) == 1 or all(
            oracle.is_product_across(q, [i]) for i in idx
        )
        agree &= sep
        groups.append((tuple(lines), bool(sep), bool(prod)))
    groups.sort(key=lambda g: pos[g[0][0]])
    return VerifyReport(True, err, bool(agree), tuple(groups))
