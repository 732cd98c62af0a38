"""Field force line tracing: dr/dp = +/- E / |E| with an embedded 5(4) pair."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import Box

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)


class Termination(Enum):
    HIT_CONDUCTOR = "HitConductor"
    LEFT_REGION = "LeftRegion"
    NEAR_EQUILIBRIUM = "NearEquilibrium"
    MAX_STEPS = "MaxSteps"


@dataclass(frozen=True)
class TraceOptions:
    region: Box | None = None
    max_steps: int = 100_000
    rtol: float = 1e-9
    max_step: float = 0.02
    first_step: float = 1e-3
    # |E| below this stops the line as NearEquilibrium
    near_equilibrium: float = 1e-6
    min_step: float = 1e-13


@dataclass(frozen=True)
class FieldLine:
    points: np.ndarray
    termination: Termination
    direction: int
    # conductor id, "ground", or None
    terminus: int | str | None = None

    @property
    def end(self) -> np.ndarray:
        return self.points[-1]

    def __len__(self):
        return len(self.points)


def _unit(model, x, y, sign):
    ex, ey = model.field(x, y)
    n = math.hypot(ex, ey)
    if n == 0.0:
        return 0.0, 0.0
    return sign * ex / n, sign * ey / n


def _stop_reason(model, x, y, region: Box, opts: TraceOptions, home=None):
    hit = model.conductor_at(x, y)
    if hit is not None:
        if home is None or hit != home[0]:
            return Termination.HIT_CONDUCTOR, hit
        cx, cy = model.conductors[hit]
        if math.hypot(x - cx, y - cy) <= home[1]:
            return Termination.HIT_CONDUCTOR, hit
    if model.ground_plane and y <= 0.0:
        return Termination.HIT_CONDUCTOR, "ground"
    if not region.contains(x, y):
        return Termination.LEFT_REGION, None
    ex, ey = model.field(x, y)
    if math.hypot(ex, ey) <= opts.near_equilibrium:
        return Termination.NEAR_EQUILIBRIUM, None
    return None


def trace_field_line(model, seed, direction: int = 1, opts: TraceOptions | None = None) -> FieldLine:
    """Integrate one force line from ``seed`` until it hits a conductor or the
    ground, leaves the region, stalls at a null, or runs out of steps.

    ``direction`` +1 follows E, -1 runs against it. Every accepted step is at
    most ``opts.max_step`` long.
    """
    opts = opts or TraceOptions()
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    region = opts.region or model.default_region()
    x, y = float(seed[0]), float(seed[1])
    pts = [(x, y)]

    # a seed inside a stop disk (separatrices of a null next to a weak
    # conductor) may leave it; it only counts as a hit deeper in
    home = None
    inside = model.conductor_at(x, y)
    if inside is not None:
        cx, cy = model.conductors[inside]
        home = (inside, 0.5 * math.hypot(x - cx, y - cy))

    stop = _stop_reason(model, x, y, region, opts, home)
    if stop is not None:
        return FieldLine(np.array(pts), stop[0], direction, stop[1])

    sign = float(direction)
    h = min(opts.first_step, opts.max_step)
    k1 = _unit(model, x, y, sign)
    steps = 0
    while True:
        ks = [k1]
        for i in range(1, 7):
            a = _A[i]
            xi = x + h * sum(a[j] * ks[j][0] for j in range(i))
            yi = y + h * sum(a[j] * ks[j][1] for j in range(i))
            ks.append(_unit(model, xi, yi, sign))
        x5 = x + h * sum(b * k[0] for b, k in zip(_B5, ks))
        y5 = y + h * sum(b * k[1] for b, k in zip(_B5, ks))
        x4 = x + h * sum(b * k[0] for b, k in zip(_B4, ks))
        y4 = y + h * sum(b * k[1] for b, k in zip(_B4, ks))

        scale = opts.rtol * max(1.0, math.hypot(x, y), math.hypot(x5, y5))
        err = math.hypot(x5 - x4, y5 - y4) / scale
        moved = math.hypot(x5 - x, y5 - y)

        if err <= 1.0 and moved <= opts.max_step:
            x, y = x5, y5
            pts.append((x, y))
            steps += 1
            k1 = ks[6]
            if home is not None and model.conductor_at(x, y) != home[0]:
                home = None
            stop = _stop_reason(model, x, y, region, opts, home)
            if stop is not None:
                return FieldLine(np.array(pts), stop[0], direction, stop[1])
            if steps >= opts.max_steps:
                return FieldLine(np.array(pts), Termination.MAX_STEPS, direction)
            factor = 5.0 if err == 0 else min(5.0, max(0.2, 0.9 * err**-0.2))
        else:
            factor = 0.5 if err <= 1.0 else max(0.1, 0.9 * err**-0.25)
        h = min(h * factor, opts.max_step)
        if h < opts.min_step:
            # step collapse only happens where the direction field flips: a null
            return FieldLine(np.array(pts), Termination.NEAR_EQUILIBRIUM, direction)
