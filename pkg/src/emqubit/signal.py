"""Two-place signals S(A, T) over the (even, odd) mode basis of a coupled line.

Even mode is logical 1, odd mode logical 0. The amplitude A is the norm of
the state and the topology class T is read off its normalized direction.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ZeroSignal
from .field.model import Charge, FieldModel

SQRT1_2 = 1 / math.sqrt(2)


class Label(Enum):
    EVEN = "even"
    ODD = "odd"
    PLUS = "plus"
    MINUS = "minus"
    NULL = "null"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Generic:
    """A state outside every named band; theta is the polar angle from EVEN,
    phi the relative phase of the odd amplitude."""

    theta: float
    phi: float

    def __str__(self):
        return f"generic(theta={self.theta:.6g}, phi={self.phi:.6g})"


TopologyClass = Label | Generic


@dataclass(frozen=True)
class SignalState:
    amp_even: complex
    amp_odd: complex

    def __post_init__(self):
        object.__setattr__(self, "amp_even", complex(self.amp_even))
        object.__setattr__(self, "amp_odd", complex(self.amp_odd))
        if not (cmath.isfinite(self.amp_even) and cmath.isfinite(self.amp_odd)):
            raise ValueError("mode amplitudes must be finite")

    @classmethod
    def from_vector(cls, v) -> "SignalState":
        return cls(complex(v[0]), complex(v[1]))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.amp_even, self.amp_odd], dtype=complex)

    @property
    def norm(self) -> float:
        return math.hypot(abs(self.amp_even), abs(self.amp_odd))

    def normalized(self) -> "SignalState":
        n = self.norm
        if n == 0:
            raise ZeroSignal("cannot normalize a null signal")
        return SignalState(self.amp_even / n, self.amp_odd / n)

    def __add__(self, other: "SignalState") -> "SignalState":
        return SignalState(self.amp_even + other.amp_even, self.amp_odd + other.amp_odd)

    def __rmul__(self, c: complex) -> "SignalState":
        return SignalState(c * self.amp_even, c * self.amp_odd)

    def isclose(self, other: "SignalState", tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.vector - other.vector)) <= tol)


@dataclass(frozen=True)
class ConductorExcitation:
    v1: complex
    v2: complex


_REFERENCE = {
    Label.EVEN: (1.0, 0.0),
    Label.ODD: (0.0, 1.0),
    Label.PLUS: (SQRT1_2, SQRT1_2),
    Label.MINUS: (SQRT1_2, -SQRT1_2),
}


def encode(label: Label | str) -> SignalState:
    label = Label(label)
    if label not in _REFERENCE:
        raise ValueError(f"cannot encode {label}")
    return SignalState(*_REFERENCE[label])


def bloch_angles(s: SignalState) -> tuple[float, float]:
    """(theta, phi) of the normalized state; theta = 2 atan2(|odd|, |even|)."""
    theta = 2.0 * math.atan2(abs(s.amp_odd), abs(s.amp_even))
    if s.amp_even == 0 or s.amp_odd == 0:
        return theta, 0.0
    phi = cmath.phase(s.amp_odd) - cmath.phase(s.amp_even)
    phi = (phi + math.pi) % (2 * math.pi) - math.pi
    return theta, phi


def bloch_distance(a: SignalState, b: SignalState) -> float:
    """Great-circle angle between two states on the Bloch sphere."""
    a, b = a.normalized(), b.normalized()
    overlap = abs(np.vdot(a.vector, b.vector))
    return 2.0 * math.acos(min(1.0, overlap))


def classify(s: SignalState, tol: float = 1e-3) -> TopologyClass:
    if not 0 < tol <= 0.1:
        raise ValueError("tol must lie in (0, 0.1]")
    if s.norm == 0:
        return Label.NULL
    for label in (Label.EVEN, Label.ODD, Label.PLUS, Label.MINUS):
        if bloch_distance(s, encode(label)) <= tol:
            return label
    return Generic(*bloch_angles(s.normalized()))


def to_conductor(s: SignalState) -> ConductorExcitation:
    return ConductorExcitation(
        (s.amp_even + s.amp_odd) * SQRT1_2, (s.amp_even - s.amp_odd) * SQRT1_2
    )


def from_conductor(c: ConductorExcitation) -> SignalState:
    return SignalState((c.v1 + c.v2) * SQRT1_2, (c.v1 - c.v2) * SQRT1_2)


@dataclass(frozen=True)
class Geometry:
    """Cross-section of a coupled strip pair; defaults resemble a microstrip."""

    separation: float = 1.0
    height: float = 0.5
    ground: bool = True
    conductor_radius: float = 0.05

    @property
    def positions(self) -> tuple[tuple[float, float], tuple[float, float]]:
        y = self.height if self.ground else 0.0
        return (-self.separation / 2, y), (self.separation / 2, y)


def to_field_model(s: SignalState, geometry: Geometry = Geometry()) -> FieldModel:
    """Instantaneous field snapshot: real parts of the conductor excitations
    become line-charge strengths."""
    if s.norm == 0:
        raise ZeroSignal("a null signal has no field")
    c = to_conductor(s)
    (x1, y1), (x2, y2) = geometry.positions
    return FieldModel(
        (Charge(x1, y1, c.v1.real), Charge(x2, y2, c.v2.real)),
        geometry.ground,
        geometry.conductor_radius,
    )


def parse_state(tokens: list[str] | str) -> SignalState:
    """``even``/``odd``/``plus``/``minus`` or ``amp re_e im_e re_o im_o``."""
    if isinstance(tokens, str):
        tokens = tokens.split()
    if not tokens:
        raise ValueError("empty state literal")
    head = tokens[0].lower()
    if head == "amp":
        if len(tokens) != 5:
            raise ValueError("amp literal needs four numbers: re_e im_e re_o im_o")
        re_e, im_e, re_o, im_o = (float(t) for t in tokens[1:])
        return SignalState(complex(re_e, im_e), complex(re_o, im_o))
    if len(tokens) != 1:
        raise ValueError(f"unexpected tokens after {tokens[0]!r}")
    try:
        label = Label(head)
    except ValueError:
        raise ValueError(f"unknown state literal {tokens[0]!r}") from None
    return encode(label)
