"""Field evaluators: quasi-static line charges over an optional ground plane,
and the spatial Fourier field of a rectangular resonator.

Both evaluators expose the same duck-typed surface used by the chart code:
``field``, ``field_many``, ``jacobian``, ``jacobian_many``, ``conductors``,
``conductor_radius``, ``ground_plane`` and ``default_region``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..errors import IncompatibleModels, OutOfCavity, PointInsideConductor

# strengths below this fraction of the largest |q| carry no field
ZERO_STRENGTH = 1e-12


@dataclass(frozen=True)
class Box:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError(f"empty box {self}")

    def contains(self, x: float, y: float) -> bool:
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    @property
    def diagonal(self) -> float:
        return math.hypot(self.xmax - self.xmin, self.ymax - self.ymin)


@dataclass(frozen=True)
class Charge:
    x: float
    y: float
    strength: float


def _as_charge(c) -> Charge:
    if isinstance(c, Charge):
        return c
    pos, q = c
    return Charge(float(pos[0]), float(pos[1]), float(q))


@dataclass(frozen=True)
class FieldModel:
    """Superposed 2D line charges, E = sum q (r - r_i) / |r - r_i|^2.

    With ``ground_plane`` the half-space y < 0 is a perfect conductor and
    every charge gets an image of opposite sign at (x, -y).
    """

    charges: tuple[Charge, ...] = ()
    ground_plane: bool = False
    conductor_radius: float = 0.05

    _xs: tuple = field(init=False, repr=False, compare=False)
    _ys: tuple = field(init=False, repr=False, compare=False)
    _qs: tuple = field(init=False, repr=False, compare=False)
    _active: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        charges = tuple(_as_charge(c) for c in self.charges)
        object.__setattr__(self, "charges", charges)
        if not self.conductor_radius > 0:
            raise ValueError("conductor_radius must be positive")
        if self.ground_plane and any(c.y <= 0 for c in charges):
            raise ValueError("charges must lie above the ground plane (y > 0)")
        pts = [(c.x, c.y) for c in charges]
        if self.ground_plane:
            pts += [(c.x, -c.y) for c in charges]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                d = math.dist(pts[i], pts[j])
                if d > 0 and self.conductor_radius >= d / 2:
                    raise ValueError(
                        "conductor_radius must be below half the minimum charge separation"
                    )

        qmax = max((abs(c.strength) for c in charges), default=0.0)
        active = tuple(
            i for i, c in enumerate(charges) if qmax > 0 and abs(c.strength) > ZERO_STRENGTH * qmax
        )
        xs = [charges[i].x for i in active]
        ys = [charges[i].y for i in active]
        qs = [charges[i].strength for i in active]
        if self.ground_plane:
            xs, ys, qs = xs + xs, ys + [-y for y in ys], qs + [-q for q in qs]
        object.__setattr__(self, "_xs", tuple(xs))
        object.__setattr__(self, "_ys", tuple(ys))
        object.__setattr__(self, "_qs", tuple(qs))
        object.__setattr__(self, "_active", active)

    # -- geometry -----------------------------------------------------------
    @property
    def conductors(self) -> dict[int, tuple[float, float]]:
        """Charged conductors by id (index into ``charges``)."""
        return {i: (self.charges[i].x, self.charges[i].y) for i in self._active}

    @property
    def is_null(self) -> bool:
        return not self._active

    @property
    def strengths(self) -> tuple[float, ...]:
        return tuple(c.strength for c in self.charges)

    def conductor_at(self, x: float, y: float) -> int | None:
        r2 = self.conductor_radius**2
        for i in self._active:
            c = self.charges[i]
            if (x - c.x) ** 2 + (y - c.y) ** 2 <= r2:
                return i
        return None

    def stagnation_guesses(self) -> list[tuple[float, float]]:
        """First-order position of the null next to each charged conductor.

        A charge q sitting in the field E0 of everything else cancels it at
        d = -q E0 / |E0|^2; Newton basins there shrink with |d|, so the chart
        search seeds these points explicitly.
        """
        out = []
        for i in self._active:
            c = self.charges[i]
            ex, ey = self.field_without(i, c.x, c.y)
            e2 = ex * ex + ey * ey
            if e2 > 0:
                out.append((c.x - c.strength * ex / e2, c.y - c.strength * ey / e2))
        return out

    def field_without(self, i: int, x: float, y: float) -> tuple[float, float]:
        """Field at (x, y) of every source except charge ``i`` itself (its image stays)."""
        c = self.charges[i]
        ex = ey = 0.0
        skipped = False
        for cx, cy, q in zip(self._xs, self._ys, self._qs):
            if not skipped and (cx, cy, q) == (c.x, c.y, c.strength):
                skipped = True
                continue
            dx, dy = x - cx, y - cy
            s = q / (dx * dx + dy * dy)
            ex += s * dx
            ey += s * dy
        return ex, ey

    def default_region(self, margin: float = 1.5) -> Box:
        if not self.charges:
            return Box(-1.0, 1.0, 0.0 if self.ground_plane else -1.0, 1.0)
        xs = [c.x for c in self.charges]
        ys = [c.y for c in self.charges]
        ymin = 0.0 if self.ground_plane else min(ys) - margin
        return Box(min(xs) - margin, max(xs) + margin, ymin, max(ys) + margin)

    # -- evaluation ---------------------------------------------------------
    def field(self, x: float, y: float) -> tuple[float, float]:
        """Unchecked field at a point; scalar fast path for the integrator."""
        ex = ey = 0.0
        for cx, cy, q in zip(self._xs, self._ys, self._qs):
            dx = x - cx
            dy = y - cy
            s = q / (dx * dx + dy * dy)
            ex += s * dx
            ey += s * dy
        return ex, ey

    def field_many(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        out = np.zeros_like(pts)
        for cx, cy, q in zip(self._xs, self._ys, self._qs):
            d = pts - (cx, cy)
            out += q * d / np.einsum("...i,...i->...", d, d)[..., None]
        return out

    def jacobian_many(self, pts: np.ndarray) -> np.ndarray:
        """dE_i/dx_j, shape (..., 2, 2)."""
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(pts.shape[:-1] + (2, 2))
        eye = np.eye(2)
        for cx, cy, q in zip(self._xs, self._ys, self._qs):
            d = pts - (cx, cy)
            r2 = np.einsum("...i,...i->...", d, d)[..., None, None]
            out += q * (eye / r2 - 2.0 * d[..., :, None] * d[..., None, :] / r2**2)
        return out

    def jacobian(self, x: float, y: float) -> np.ndarray:
        return self.jacobian_many(np.array([x, y]))

    def jacobian_scale(self, x: float, y: float) -> float:
        """Size the Jacobian would have if the sources did not cancel."""
        return sum(abs(q) / ((x - cx) ** 2 + (y - cy) ** 2)
                   for cx, cy, q in zip(self._xs, self._ys, self._qs))


def eval_field(model: FieldModel, point) -> np.ndarray:
    x, y = float(point[0]), float(point[1])
    hit = model.conductor_at(x, y)
    if hit is not None:
        raise PointInsideConductor(f"point ({x}, {y}) lies inside conductor {hit}")
    return np.array(model.field(x, y))


def scaled(model: FieldModel, factor: float) -> FieldModel:
    return FieldModel(
        tuple(Charge(c.x, c.y, factor * c.strength) for c in model.charges),
        model.ground_plane,
        model.conductor_radius,
    )


def superpose_models(m1: FieldModel, m0: FieldModel) -> FieldModel:
    """Model whose field is the sum of both operands' fields.

    Charges at the same position are merged into one with the summed strength;
    a merged strength of zero leaves an inert conductor behind.
    """
    if m1.ground_plane != m0.ground_plane:
        raise IncompatibleModels("operands disagree on ground_plane")
    if not m1.charges:
        return m0
    if not m0.charges:
        return m1
    if m1.conductor_radius != m0.conductor_radius:
        raise IncompatibleModels("operands disagree on conductor_radius")
    merged: list[Charge] = list(m1.charges)
    for c in m0.charges:
        for k, m in enumerate(merged):
            if math.isclose(m.x, c.x, abs_tol=1e-12) and math.isclose(m.y, c.y, abs_tol=1e-12):
                merged[k] = Charge(m.x, m.y, m.strength + c.strength)
                break
        else:
            merged.append(c)
    return FieldModel(tuple(merged), m1.ground_plane, m1.conductor_radius)


def coupled_pair(
    q1: float,
    q2: float,
    separation: float = 1.0,
    height: float = 0.5,
    ground: bool = True,
    conductor_radius: float = 0.05,
) -> FieldModel:
    """Two strips at (-s/2, h) and (+s/2, h); the default mimics a microstrip pair."""
    y = height if ground else 0.0
    return FieldModel(
        (Charge(-separation / 2, y, q1), Charge(separation / 2, y, q2)),
        ground,
        conductor_radius,
    )


# -- resonator -------------------------------------------------------------------
@dataclass(frozen=True)
class ResonatorModel:
    """Rectangular cavity field as the gradient of a truncated double sine series

        u(x, y) = sum Re(c_mn) sin(m pi x / a) sin(n pi y / b)

    ``f`` and ``f0`` are carried as metadata only.
    """

    a: float
    b: float
    mode_coefficients: Mapping[tuple[int, int], complex]
    f: float = 1.0
    f0: float = 1.0
    max_order: int = 10

    ground_plane: bool = field(default=False, init=False)
    conductor_radius: float = field(default=0.0, init=False)

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.f > 0 and self.f0 > 0):
            raise ValueError("dimensions and frequencies must be positive")
        coeffs = {}
        for (m, n), c in dict(self.mode_coefficients).items():
            if m < 1 or n < 1:
                raise ValueError(f"mode indices must be >= 1, got {(m, n)}")
            if m <= self.max_order and n <= self.max_order and c != 0:
                coeffs[(int(m), int(n))] = complex(c)
        object.__setattr__(self, "mode_coefficients", dict(sorted(coeffs.items())))

    @property
    def conductors(self) -> dict[int, tuple[float, float]]:
        return {}

    @property
    def is_null(self) -> bool:
        return all(c.real == 0 for c in self.mode_coefficients.values())

    def conductor_at(self, x, y):
        return None

    def default_region(self, margin: float = 0.0) -> Box:
        return Box(0.0, self.a, 0.0, self.b)

    def jacobian_scale(self, x: float, y: float) -> float:
        return sum(abs(c) * (kx * kx + ky * ky) for c, kx, ky in self._terms())

    def _terms(self):
        for (m, n), c in self.mode_coefficients.items():
            yield c.real, m * math.pi / self.a, n * math.pi / self.b

    def potential(self, x: float, y: float) -> float:
        return sum(c * math.sin(kx * x) * math.sin(ky * y) for c, kx, ky in self._terms())

    def field(self, x: float, y: float) -> tuple[float, float]:
        ex = ey = 0.0
        for c, kx, ky in self._terms():
            sx, cx = math.sin(kx * x), math.cos(kx * x)
            sy, cy = math.sin(ky * y), math.cos(ky * y)
            ex += c * kx * cx * sy
            ey += c * ky * sx * cy
        return ex, ey

    def field_many(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        x, y = pts[..., 0], pts[..., 1]
        out = np.zeros_like(pts)
        for c, kx, ky in self._terms():
            out[..., 0] += c * kx * np.cos(kx * x) * np.sin(ky * y)
            out[..., 1] += c * ky * np.sin(kx * x) * np.cos(ky * y)
        return out

    def jacobian_many(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        x, y = pts[..., 0], pts[..., 1]
        out = np.zeros(pts.shape[:-1] + (2, 2))
        for c, kx, ky in self._terms():
            sx, cx = np.sin(kx * x), np.cos(kx * x)
            sy, cy = np.sin(ky * y), np.cos(ky * y)
            out[..., 0, 0] -= c * kx * kx * sx * sy
            out[..., 1, 1] -= c * ky * ky * sx * sy
            out[..., 0, 1] += c * kx * ky * cx * cy
        out[..., 1, 0] = out[..., 0, 1]
        return out

    def jacobian(self, x: float, y: float) -> np.ndarray:
        return self.jacobian_many(np.array([x, y]))


def resonator_field(model: ResonatorModel, point) -> np.ndarray:
    x, y = float(point[0]), float(point[1])
    if not (0.0 <= x <= model.a and 0.0 <= y <= model.b):
        raise OutOfCavity(f"point ({x}, {y}) outside [0, {model.a}] x [0, {model.b}]")
    return np.array(model.field(x, y))

