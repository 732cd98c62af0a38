"""Isolated nulls of a planar field and their Jacobian classification."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import Box


class EquilibriumKind(Enum):
    SADDLE = "saddle"
    NODE = "node"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class EquilibriumPoint:
    position: tuple[float, float]
    kind: EquilibriumKind
    eigenvalues: tuple[float, float]
    # (stable, unstable) unit eigenvectors; saddles only
    eigenvectors: tuple[tuple[float, float], tuple[float, float]] | None = None
    residual: float = 0.0

    @property
    def label(self) -> str:
        if self.kind is EquilibriumKind.NODE:
            return "node:sink" if max(self.eigenvalues) < 0 else "node:source"
        return self.kind.value


@dataclass(frozen=True)
class EquilibriumOptions:
    grid: int = 64
    max_iter: int = 50
    dedup_radius: float = 1e-4
    tolerance: float = 1e-10
    # relative |lambda_min| / |lambda_max| under which the null is degenerate
    degenerate_ratio: float = 1e-8
    # |lambda_min| against the uncancelled Jacobian scale; catches higher-order
    # nulls where both eigenvalues vanish together
    degenerate_scale: float = 1e-4
    ring_radii: tuple[float, ...] = (1.2, 1.6, 2.5, 4.0, 7.0)
    ring_points: int = 24


def _canonical(v: np.ndarray) -> tuple[float, float]:
    v = v / np.linalg.norm(v)
    if v[0] < 0 or (v[0] == 0 and v[1] < 0):
        v = -v
    return float(v[0]), float(v[1])


def classify_jacobian(jac: np.ndarray, degenerate_ratio: float = 1e-8, floor: float = 0.0):
    sym = 0.5 * (jac + jac.T)
    asym = 0.5 * (jac - jac.T)
    w = np.linalg.eigvals(jac)
    if np.max(np.abs(asym)) > 1e-9 * max(1.0, np.max(np.abs(sym))) and np.any(np.abs(w.imag) > 0):
        # rotational part: not produced by gradient fields
        return EquilibriumKind.DEGENERATE, (float(w[0].real), float(w[1].real)), None
    vals, vecs = np.linalg.eigh(sym)
    big = max(abs(vals[0]), abs(vals[1]))
    if big == 0 or min(abs(vals[0]), abs(vals[1])) <= max(degenerate_ratio * big, floor):
        return EquilibriumKind.DEGENERATE, (float(vals[0]), float(vals[1])), None
    if vals[0] < 0 < vals[1]:
        return (
            EquilibriumKind.SADDLE,
            (float(vals[0]), float(vals[1])),
            (_canonical(vecs[:, 0]), _canonical(vecs[:, 1])),
        )
    return EquilibriumKind.NODE, (float(vals[0]), float(vals[1])), None


def _seeds(model, region: Box, opts: EquilibriumOptions) -> np.ndarray:
    n = opts.grid
    xs = region.xmin + (np.arange(n) + 0.5) * (region.xmax - region.xmin) / n
    ys = region.ymin + (np.arange(n) + 0.5) * (region.ymax - region.ymin) / n
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    pts = [np.stack([gx.ravel(), gy.ravel()], axis=1)]
    # nulls pinned close to a weak conductor have tiny Newton basins
    ang = 2 * np.pi * (np.arange(opts.ring_points) + 0.5) / opts.ring_points
    for cx, cy in model.conductors.values():
        for rr in opts.ring_radii:
            rad = rr * model.conductor_radius
            pts.append(np.stack([cx + rad * np.cos(ang), cy + rad * np.sin(ang)], axis=1))
    guesses = getattr(model, "stagnation_guesses", None)
    if guesses is not None:
        g = guesses()
        if g:
            pts.append(np.array(g, dtype=float))
    return np.concatenate(pts)


_AT_CHARGE = 1e-12


def _admissible(model, region: Box, p: np.ndarray, margin: float) -> np.ndarray:
    ok = (
        (p[:, 0] > region.xmin + margin)
        & (p[:, 0] < region.xmax - margin)
        & (p[:, 1] > region.ymin + margin)
        & (p[:, 1] < region.ymax - margin)
    )
    # the stop radius only ends integration; nulls inside it are still nulls
    for cx, cy in model.conductors.values():
        ok &= (p[:, 0] - cx) ** 2 + (p[:, 1] - cy) ** 2 > _AT_CHARGE**2
    if model.ground_plane:
        ok &= p[:, 1] > max(margin, 0.0)
    return ok


def find_equilibria(model, region: Box | None = None, opts: EquilibriumOptions | None = None):
    """Grid-seeded Newton search for E(r) = 0 inside ``region``.

    Roots closer than ``dedup_radius`` are merged and roots on the region edge
    are dropped. Seeds also ring every conductor and sit at the first-order
    stagnation point next to it, where plain grid seeds miss the small basin.
    The result is sorted by (x, y).
    """
    opts = opts or EquilibriumOptions()
    region = region or model.default_region()
    if getattr(model, "is_null", False):
        # a vanishing field is one equilibrium area, not isolated nulls
        return []
    margin = 1e-7 * region.diagonal
    p = _seeds(model, region, opts)
    p = p[_admissible(model, region, p, margin)]
    if len(p) == 0:
        return []

    alive = np.ones(len(p), dtype=bool)
    done = np.zeros(len(p), dtype=bool)
    max_move = 0.25 * region.diagonal
    for _ in range(opts.max_iter):
        idx = np.flatnonzero(alive & ~done)
        if len(idx) == 0:
            break
        q = p[idx]
        e = model.field_many(q)
        enorm = np.hypot(e[:, 0], e[:, 1])
        conv = enorm <= opts.tolerance
        done[idx[conv]] = True
        work = ~conv
        if not work.any():
            break
        idx, q, e = idx[work], q[work], e[work]
        jac = model.jacobian_many(q)
        det = jac[:, 0, 0] * jac[:, 1, 1] - jac[:, 0, 1] * jac[:, 1, 0]
        bad = ~np.isfinite(det) | (np.abs(det) < 1e-300)
        det = np.where(bad, 1.0, det)
        dx = -(jac[:, 1, 1] * e[:, 0] - jac[:, 0, 1] * e[:, 1]) / det
        dy = -(-jac[:, 1, 0] * e[:, 0] + jac[:, 0, 0] * e[:, 1]) / det
        step = np.hypot(dx, dy)
        shrink = np.where(step > max_move, max_move / np.maximum(step, 1e-300), 1.0)
        q = q + np.stack([dx * shrink, dy * shrink], axis=1)
        p[idx] = q
        lost = bad | ~np.isfinite(q).all(axis=1) | ~_admissible(model, region, q, -0.5 * max_move)
        alive[idx[lost]] = False

    cand = p[alive]
    cand = cand[_admissible(model, region, cand, margin)]
    if len(cand) == 0:
        return []
    # final polish and residual check
    for _ in range(3):
        e = model.field_many(cand)
        jac = model.jacobian_many(cand)
        try:
            cand = cand - np.linalg.solve(jac, e[..., None])[..., 0]
        except np.linalg.LinAlgError:
            break
    cand = cand[np.isfinite(cand).all(axis=1)]
    e = model.field_many(cand)
    res = np.hypot(e[:, 0], e[:, 1])
    keep = (res <= opts.tolerance) & _admissible(model, region, cand, margin)
    cand, res = cand[keep], res[keep]

    found: list[tuple[np.ndarray, float]] = []
    for pt, r in zip(cand, res):
        if all(np.hypot(*(pt - f)) > opts.dedup_radius for f, _ in found):
            found.append((pt, r))
    found.sort(key=lambda t: (round(t[0][0], 9), round(t[0][1], 9)))

    out = []
    for pt, r in found:
        floor = opts.degenerate_scale * model.jacobian_scale(*pt)
        kind, vals, vecs = classify_jacobian(model.jacobian(*pt), opts.degenerate_ratio, floor)
        out.append(EquilibriumPoint((float(pt[0]), float(pt[1])), kind, vals, vecs, float(r)))
    return out
