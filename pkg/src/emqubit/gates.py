"""Gate set as transmission matrices over the (even, odd) mode basis."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import EntanglementNotRepresentable
from .signal import SignalState, classify

UNITARY_TOL = 1e-12
DEFAULT_FILTER_DB = 40.0


class Policy(Enum):
    STRICT_BASIS = "strict"
    JOIN_GROUPS = "join"


@dataclass(frozen=True)
class GateKind:
    name: str
    suppression_db: float | None = None

    def __post_init__(self):
        if self.name not in ("NOT", "SNOT", "FILTER", "SWITCH", "CNOT"):
            raise ValueError(f"unknown gate kind {self.name!r}")
        if self.name == "FILTER":
            db = self.suppression_db
            if db is None or not math.isfinite(db) or db <= 0:
                raise ValueError("filter suppression must be finite and positive")

    @property
    def arity(self) -> int:
        return {"NOT": 1, "SNOT": 1, "FILTER": 1, "SWITCH": 3, "CNOT": 2}[self.name]


NOT = GateKind("NOT")
SNOT = GateKind("SNOT")
SWITCH = GateKind("SWITCH")
CNOT = GateKind("CNOT")


def Filter(db: float = DEFAULT_FILTER_DB) -> GateKind:
    return GateKind("FILTER", float(db))


@dataclass(frozen=True)
class TransmissionMatrix:
    entries: np.ndarray = field(compare=False)
    unitary: bool
    name: str = ""

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("transmission matrix must be 2x2")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        if self.unitary and not _is_unitary(m):
            raise ValueError(f"{self.name or 'matrix'} declared unitary but T^H T != I")

    @property
    def dagger(self) -> "TransmissionMatrix":
        return TransmissionMatrix(self.entries.conj().T, self.unitary, f"{self.name}^H")

    def __matmul__(self, other: "TransmissionMatrix") -> "TransmissionMatrix":
        m = self.entries @ other.entries
        return TransmissionMatrix(m, self.unitary and other.unitary and _is_unitary(m),
                                  f"{self.name}*{other.name}")


def _is_unitary(m: np.ndarray) -> bool:
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= UNITARY_TOL)


def check_unitary(t: TransmissionMatrix) -> bool:
    return _is_unitary(t.entries)


def identity() -> TransmissionMatrix:
    return TransmissionMatrix(np.eye(2), True, "I")


def gate_not() -> TransmissionMatrix:
    return TransmissionMatrix([[0, 1], [1, 0]], True, "NOT")


def gate_sqrt_not() -> TransmissionMatrix:
    return TransmissionMatrix(0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]), True, "SNOT")


def gate_filter(suppression_db: float = DEFAULT_FILTER_DB) -> TransmissionMatrix:
    """Even mode passes; odd mode is attenuated by ``suppression_db``."""
    if not math.isfinite(suppression_db) or suppression_db <= 0:
        raise ValueError("suppression_db must be finite and positive")
    return TransmissionMatrix(np.diag([1.0, 10 ** (-suppression_db / 20)]), False,
                              f"FILTER({suppression_db:g})")


def matrix_for(kind: GateKind) -> TransmissionMatrix:
    if kind.name == "NOT":
        return gate_not()
    if kind.name == "SNOT":
        return gate_sqrt_not()
    if kind.name == "FILTER":
        return gate_filter(kind.suppression_db)
    raise ValueError(f"{kind.name} has no single-line matrix")


def apply(t: TransmissionMatrix, s: SignalState) -> SignalState:
    return SignalState.from_vector(t.entries @ s.vector)


def gate_switch(s: SignalState) -> tuple[SignalState, SignalState]:
    """Route the even part to the logical-1 output and the odd part to the
    logical-0 output."""
    return SignalState(s.amp_even, 0), SignalState(0, s.amp_odd)


def merge(out_one: SignalState, out_zero: SignalState) -> SignalState:
    """Inverse of :func:`gate_switch` (multiplexer direction)."""
    return out_one + out_zero


# joint CNOT over (control, target) in the logical basis; index = c + 2 t
CNOT_4X4 = np.array(
    [[1, 0, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0],
     [0, 1, 0, 0]],
    dtype=complex,
)


def control_value(control: SignalState, tol: float = 1e-9) -> int | None:
    """Logical value of a basis-state control (1 = even, 0 = odd), or None
    when it is superposed. A null control carries nothing and reads as 0."""
    p_even = abs(control.amp_even) ** 2
    p_odd = abs(control.amp_odd) ** 2
    total = p_even + p_odd
    if total == 0 or p_even <= tol * total:
        return 0
    if p_odd <= tol * total:
        return 1
    return None


def gate_cnot(control: SignalState, target: SignalState,
              policy: Policy = Policy.STRICT_BASIS):
    """Controlled NOT on two single lines.

    A basis control yields the pair (control, target'). A superposed control
    raises under STRICT_BASIS and yields the joint 4-vector (index bit 0 is
    the control, bit 1 the target, 1 = even) under JOIN_GROUPS.
    """
    policy = Policy(policy)
    value = control_value(control)
    if value == 1:
        return control, apply(gate_not(), target)
    if value == 0:
        return control, target
    if policy is Policy.STRICT_BASIS:
        raise EntanglementNotRepresentable(
            f"control is superposed ({classify(control)}); joint state needs JoinGroups"
        )
    c = np.array([control.amp_odd, control.amp_even])
    t = np.array([target.amp_odd, target.amp_even])
    return CNOT_4X4 @ np.kron(t, c)


def is_attenuated(s: SignalState, reference_norm: float = 1.0, tol: float = 1e-12) -> bool:
    return s.norm < reference_norm - tol

