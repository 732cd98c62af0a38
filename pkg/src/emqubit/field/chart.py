"""Topological charts: nulls, separatrices and their connectivity graph."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field, replace

import numpy as np

from ..errors import DegenerateEquilibrium
from .equilibria import EquilibriumKind, EquilibriumOptions, EquilibriumPoint, find_equilibria
from .model import Box
from .trace import FieldLine, Termination, TraceOptions, trace_field_line

BOUNDARY = "boundary"
GROUND = "ground"
UNRESOLVED = "unresolved"

# exhaustive relabelling stops being sensible well before this
MAX_PERMUTATIONS = 200_000


def conductor_node(cid) -> str:
    return f"conductor:{cid}"


def equilibrium_node(i: int) -> str:
    return f"eq:{i}"


@dataclass(frozen=True)
class Separatrix:
    source: str
    target: str
    # polyline starting at the saddle it belongs to
    points: np.ndarray = field(repr=False, compare=False)
    saddle: int = 0
    stable: bool = False


@dataclass(frozen=True)
class TopologicalChart:
    equilibria: tuple[EquilibriumPoint, ...]
    separatrices: tuple[Separatrix, ...]
    conductors: tuple = ()
    ground: bool = False
    region: Box | None = None
    reliable: bool = True
    class_label: str | None = None
    # (x, y, strength) of every line charge, for drawing
    layout: tuple = ()
    conductor_radius: float = 0.0

    @property
    def nodes(self) -> list[str]:
        fixed = [conductor_node(c) for c in self.conductors]
        if self.ground:
            fixed.append(GROUND)
        fixed.append(BOUNDARY)
        return [equilibrium_node(i) for i in range(len(self.equilibria))] + fixed

    @property
    def saddles(self) -> list[EquilibriumPoint]:
        return [e for e in self.equilibria if e.kind is EquilibriumKind.SADDLE]


@dataclass(frozen=True)
class ChartOptions:
    equilibria: EquilibriumOptions = EquilibriumOptions()
    trace: TraceOptions = TraceOptions()
    launch_offset: float = 1e-4
    # a line stopping NearEquilibrium within this distance lands on that null
    capture_radius: float = 1e-2
    strict: bool = True


def _terminus(line: FieldLine, equilibria, capture_radius: float) -> str:
    if line.termination is Termination.HIT_CONDUCTOR:
        return GROUND if line.terminus == "ground" else conductor_node(line.terminus)
    if line.termination is Termination.LEFT_REGION:
        return BOUNDARY
    if line.termination is Termination.NEAR_EQUILIBRIUM and equilibria:
        end = line.end
        d = [math.dist(end, e.position) for e in equilibria]
        k = int(np.argmin(d))
        if d[k] <= capture_radius:
            return equilibrium_node(k)
    return UNRESOLVED


def extract_chart(model, region: Box | None = None, opts: ChartOptions | None = None) -> TopologicalChart:
    """Find the nulls, launch the four separatrices of every saddle and record
    where each one ends.

    Outgoing separatrices run along the unstable eigenvector with the field,
    incoming ones along the stable eigenvector against it.
    """
    opts = opts or ChartOptions()
    region = region or model.default_region()
    if model.ground_plane and region.ymin < 0:
        region = replace(region, ymin=0.0)
    topts = replace(opts.trace, region=region)

    eqs = tuple(find_equilibria(model, region, opts.equilibria))
    degenerate = [e for e in eqs if e.kind is EquilibriumKind.DEGENERATE]
    if degenerate and opts.strict:
        raise DegenerateEquilibrium(
            f"singular Jacobian at {degenerate[0].position}; chart is unreliable"
        )

    seps = []
    for i, eq in enumerate(eqs):
        if eq.kind is not EquilibriumKind.SADDLE:
            continue
        p0 = np.array(eq.position)
        stable_v, unstable_v = (np.array(v) for v in eq.eigenvectors)
        eps = opts.launch_offset
        if model.conductors:
            nearest = min(math.dist(eq.position, c) for c in model.conductors.values())
            eps = min(eps, 0.25 * nearest)
        for vec, direction in ((unstable_v, 1), (stable_v, -1)):
            for s in (1.0, -1.0):
                seed = p0 + s * eps * vec
                line = trace_field_line(model, seed, direction, topts)
                end = _terminus(line, eqs, opts.capture_radius)
                pts = np.vstack([p0, line.points])
                if direction == 1:
                    seps.append(Separatrix(equilibrium_node(i), end, pts, i, False))
                else:
                    seps.append(Separatrix(end, equilibrium_node(i), pts, i, True))

    chart = TopologicalChart(
        eqs,
        tuple(seps),
        tuple(sorted(model.conductors)),
        bool(model.ground_plane),
        region,
        reliable=not degenerate,
        layout=_layout(model),
        conductor_radius=float(getattr(model, "conductor_radius", 0.0)),
    )
    return replace(chart, class_label=canonical_label(chart))


def _layout(model) -> tuple:
    charges = getattr(model, "charges", ())
    return tuple((float(c.x), float(c.y), float(c.strength)) for c in charges)


def _canonical_form(chart: TopologicalChart):
    labels = [e.label for e in chart.equilibria]
    groups: dict[str, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    group_keys = sorted(groups)

    count = 1
    for k in group_keys:
        count *= math.factorial(len(groups[k]))
    if count > MAX_PERMUTATIONS:
        raise ValueError(f"chart too large for exhaustive matching ({count} relabellings)")

    fixed = tuple(n for n in chart.nodes if not n.startswith("eq:"))
    node_sig = (tuple(sorted(Counter(labels).items())), fixed)
    edges = [(s.source, s.target) for s in chart.separatrices]

    best = None
    for perms in itertools.product(*(itertools.permutations(groups[k]) for k in group_keys)):
        name = {}
        for k, perm in zip(group_keys, perms):
            for rank, idx in enumerate(perm):
                name[equilibrium_node(idx)] = f"{k}#{rank}"
        relabelled = tuple(sorted((name.get(a, a), name.get(b, b)) for a, b in edges))
        if best is None or relabelled < best:
            best = relabelled
    return node_sig, best or ()


def canonical_label(chart: TopologicalChart) -> str:
    (counts, fixed), edges = _canonical_form(chart)
    nodes = ",".join([f"{k}x{n}" for k, n in counts] + list(fixed))
    return f"nodes[{nodes}] edges[{','.join(f'{a}>{b}' for a, b in edges)}]"


def charts_equivalent(c1: TopologicalChart, c2: TopologicalChart) -> bool:
    """Labelled-graph isomorphism of the two charts.

    Nulls of the same kind are interchangeable; conductors, the ground and
    the region boundary keep their identity. Separatrix shapes are ignored.
    """
    return _canonical_form(c1) == _canonical_form(c2)


def sample_field_lines(model, region: Box | None = None, per_source: int = 12,
                       opts: TraceOptions | None = None) -> list[FieldLine]:
    """Ordinary force lines for pictures: launched around every conductor
    (with the field from sources, against it from sinks) and around nodes."""
    region = region or model.default_region()
    if model.ground_plane and region.ymin < 0:
        region = replace(region, ymin=0.0)
    topts = replace(opts or TraceOptions(max_step=0.05, rtol=1e-7), region=region)
    strengths = getattr(model, "strengths", None)
    seeds = []
    for cid, (cx, cy) in sorted(model.conductors.items()):
        direction = 1 if strengths[cid] > 0 else -1
        seeds.append(((cx, cy), 1.02 * model.conductor_radius, direction))
    if not model.conductors:
        for e in find_equilibria(model, region):
            if e.kind is EquilibriumKind.NODE:
                direction = 1 if min(e.eigenvalues) > 0 else -1
                seeds.append((e.position, 1e-3 * region.diagonal, direction))
    lines = []
    for (cx, cy), rad, direction in seeds:
        for k in range(per_source):
            a = 2 * math.pi * (k + 0.5) / per_source
            seed = (cx + rad * math.cos(a), cy + rad * math.sin(a))
            if model.ground_plane and seed[1] <= 0:
                continue
            lines.append(trace_field_line(model, seed, direction, topts))
    return lines
