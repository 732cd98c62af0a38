"""Small reference statevector simulator.

Qubit i is bit i of the amplitude index (qubit 0 is least significant) and
the single-qubit basis order is (|0>, |1>). Gates are applied as finished
unitaries by explicit index pairing, not by tensor reshaping.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange, TooManyQubits

MAX_QUBITS = 12
UNITARY_TOL = 1e-12
PRODUCT_TOL = 1e-10

X = np.array([[0, 1], [1, 0]], dtype=complex)
SQRT_X = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)


@dataclass(frozen=True)
class QuantumState:
    n: int
    amplitudes: np.ndarray = field(compare=False, repr=False)

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        if a.shape != (2**self.n,):
            raise ValueError(f"expected {2**self.n} amplitudes, got {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class OracleGate:
    kind: str
    qubits: tuple[int, ...]
    matrix: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind == "single":
            m = np.array(self.matrix, dtype=complex)
            if m.shape != (2, 2) or np.max(np.abs(m.conj().T @ m - np.eye(2))) > UNITARY_TOL:
                raise ValueError("single-qubit gate must be a 2x2 unitary")
            object.__setattr__(self, "matrix", m)
            if len(self.qubits) != 1:
                raise ValueError("single-qubit gate takes one index")
        elif self.kind == "cnot":
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError("cnot needs distinct control and target")
        else:
            raise ValueError(f"unknown oracle gate kind {self.kind!r}")


def single(matrix, qubit: int) -> OracleGate:
    return OracleGate("single", (qubit,), matrix)


def cnot(control: int, target: int) -> OracleGate:
    return OracleGate("cnot", (control, target))


def init(n: int, states=None) -> QuantumState:
    """Product state; ``states`` is a sequence of per-qubit 2-vectors or basis
    bits (qubit 0 first), all |0> when omitted."""
    if n < 1:
        raise ValueError("need at least one qubit")
    if n > MAX_QUBITS:
        raise TooManyQubits(f"{n} qubits exceeds the oracle limit of {MAX_QUBITS}")
    if states is None:
        states = [0] * n
    if len(states) != n:
        raise ValueError(f"expected {n} per-qubit states, got {len(states)}")
    vecs = []
    for s in states:
        if isinstance(s, (int, np.integer)):
            v = KET1 if s else KET0
        else:
            v = np.asarray(s, dtype=complex)
            nv = np.linalg.norm(v)
            if v.shape != (2,) or nv == 0:
                raise ValueError("per-qubit state must be a nonzero 2-vector")
            v = v / nv
        vecs.append(v)
    amp = np.ones(1, dtype=complex)
    for v in vecs:
        # later qubits are more significant
        amp = np.kron(v, amp)
    return QuantumState(n, amp)


def apply_gate(state: QuantumState, g: OracleGate) -> QuantumState:
    for q in g.qubits:
        if not 0 <= q < state.n:
            raise IndexOutOfRange(f"qubit {q} out of range for n={state.n}")
    a = state.amplitudes
    out = np.array(a)
    idx = np.arange(2**state.n)
    if g.kind == "single":
        bit = 1 << g.qubits[0]
        lo = idx[(idx & bit) == 0]
        hi = lo | bit
        m = g.matrix
        out[lo] = m[0, 0] * a[lo] + m[0, 1] * a[hi]
        out[hi] = m[1, 0] * a[lo] + m[1, 1] * a[hi]
    else:
        cbit, tbit = 1 << g.qubits[0], 1 << g.qubits[1]
        src = idx[(idx & cbit) != 0]
        out[src] = a[src ^ tbit]
    return QuantumState(state.n, out)


def run(state: QuantumState, gates) -> QuantumState:
    for g in gates:
        state = apply_gate(state, g)
    return state


def _bipartition_matrix(state: QuantumState, part) -> np.ndarray:
    part = sorted(set(part))
    rest = [q for q in range(state.n) if q not in part]
    if not part or not rest:
        raise ValueError("bipartition needs two nonempty sides")
    if any(not 0 <= q < state.n for q in part):
        raise IndexOutOfRange("bipartition index out of range")
    idx = np.arange(2**state.n)

    def sub(qs):
        r = np.zeros_like(idx)
        for k, q in enumerate(qs):
            r |= ((idx >> q) & 1) << k
        return r

    m = np.zeros((2 ** len(part), 2 ** len(rest)), dtype=complex)
    m[sub(part), sub(rest)] = state.amplitudes
    return m


def schmidt_coefficients(state: QuantumState, part) -> np.ndarray:
    return np.linalg.svd(_bipartition_matrix(state, part), compute_uv=False)


def is_product_across(state: QuantumState, part) -> bool:
    """True when the state factorizes across ``part`` | rest (Schmidt rank 1)."""
    s = schmidt_coefficients(state, part)
    return bool(len(s) < 2 or s[1] <= PRODUCT_TOL)
