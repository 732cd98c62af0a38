"""Parameter sweeps that locate abrupt chart changes."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .chart import ChartOptions, charts_equivalent, extract_chart
from .model import Box


@dataclass(frozen=True)
class Bifurcation:
    lo: float
    hi: float
    before: str
    after: str

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo


def sweep_bifurcations(
    model_family: Callable[[float], object],
    t_range: tuple[float, float],
    samples: int,
    tol: float = 1e-4,
    region: Box | None = None,
    opts: ChartOptions | None = None,
) -> list[Bifurcation]:
    """Sample the family, bisect every adjacent pair whose charts differ down to
    ``tol``, and merge brackets that touch (they enclose the same critical value).
    Each reported interval is at most ``tol`` wide.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    opts = opts or ChartOptions(strict=False)
    t0, t1 = t_range
    region = region or model_family(t0).default_region()
    cache = {}

    def chart(t):
        if t not in cache:
            cache[t] = extract_chart(model_family(t), region, opts)
        return cache[t]

    def bisect(a, b, width):
        ca = chart(a)
        while b - a > width:
            m = 0.5 * (a + b)
            if charts_equivalent(chart(m), ca):
                a = m
            else:
                b = m
        return a, b

    ts = np.linspace(t0, t1, samples)
    found = []
    for a, b in zip(ts[:-1], ts[1:]):
        a, b = float(a), float(b)
        if not charts_equivalent(chart(a), chart(b)):
            found.append(bisect(a, b, tol))

    # brackets sharing an endpoint enclose one critical value sampled exactly
    groups: list[list[tuple[float, float]]] = []
    for br in found:
        if groups and br[0] <= groups[-1][-1][1]:
            groups[-1].append(br)
        else:
            groups.append([br])
    out = []
    for g in groups:
        if g[-1][1] - g[0][0] > tol:
            g = [bisect(a, b, tol / len(g)) for a, b in g]
        lo, hi = g[0][0], g[-1][1]
        out.append(Bifurcation(lo, hi, chart(lo).class_label, chart(hi).class_label))
    return out
