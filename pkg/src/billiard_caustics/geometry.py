"""Rays, conic tables, the billiard map and confocal conics.

A ray is an oriented line ``x sin(alpha) - y cos(alpha) = p`` travelling in
direction ``(cos alpha, sin alpha)``.  The table is the ellipse
``x^2/a^2 + y^2/b^2 = 1`` with ``0 < b <= a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import jets
from .errors import FocusPoint, NoIntersection, NotTangent, OutsidePoint, Tangential

TWO_PI = 2.0 * math.pi

FOCUS_TOL = 1e-8
GRAZE_TOL = 1e-12
TANGENCY_TOL = 1e-8

ELLIPSE = "ellipse"
HYPERBOLA = "hyperbola"
FOCI_SEGMENT = "degenerate-foci-segment"
AXIS = "degenerate-axis"


@dataclass(frozen=True)
class Point:
    """A plane point, or a point at infinity when ``direction`` is set."""

    x: float = math.nan
    y: float = math.nan
    direction: Optional[float] = None

    @classmethod
    def at_infinity(cls, direction: float) -> "Point":
        return cls(math.nan, math.nan, float(direction))

    @property
    def is_infinite(self) -> bool:
        return self.direction is not None

    def distance(self, other: "Point") -> float:
        if self.is_infinite or other.is_infinite:
            if self.is_infinite and other.is_infinite:
                # directions are lines through infinity, compare mod pi
                d = (self.direction - other.direction) % math.pi
                return 0.0 if min(d, math.pi - d) < 1e-9 else math.inf
            return math.inf
        return math.hypot(self.x - other.x, self.y - other.y)

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x, self.y], dtype=dtype)


@dataclass(frozen=True)
class Ray:
    alpha: float
    p: float

    @classmethod
    def through(cls, point: Point, alpha: float) -> "Ray":
        return cls(alpha, point.x * math.sin(alpha) - point.y * math.cos(alpha))

    @property
    def direction(self) -> tuple[float, float]:
        return math.cos(self.alpha), math.sin(self.alpha)

    @property
    def foot(self) -> Point:
        return Point(self.p * math.sin(self.alpha), -self.p * math.cos(self.alpha))

    def residual(self, point: Point) -> float:
        """Signed incidence residual of ``point`` against this line."""
        return point.x * math.sin(self.alpha) - point.y * math.cos(self.alpha) - self.p

    def reversed(self) -> "Ray":
        return Ray(self.alpha + math.pi, -self.p)


@dataclass(frozen=True)
class ConicTable:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("semi-axes must be finite")
        if not 0 < self.b <= self.a:
            raise ValueError(f"need 0 < b <= a, got a={self.a}, b={self.b}")

    @property
    def c(self) -> float:
        return math.sqrt(self.a * self.a - self.b * self.b)

    @property
    def is_circle(self) -> bool:
        return self.a == self.b

    @property
    def foci(self) -> tuple[Point, Point]:
        return Point(self.c, 0.0), Point(-self.c, 0.0)

    def level(self, point: Point) -> float:
        """``x^2/a^2 + y^2/b^2``; below 1 inside the table."""
        return (point.x / self.a) ** 2 + (point.y / self.b) ** 2

    def contains(self, point: Point) -> bool:
        return self.level(point) < 1.0

    def is_focal(self, point: Point) -> bool:
        return any(point.distance(f) <= FOCUS_TOL * self.a for f in self.foci)


@dataclass(frozen=True)
class ConfocalParam:
    lam: float
    kind: str

    def residual(self, table: ConicTable, point: Point) -> float:
        """Incidence residual of ``point`` on the conic ``C_lambda``."""
        if self.kind in (AXIS, FOCI_SEGMENT):
            # both degenerate members sit on a coordinate axis
            if math.isclose(self.lam, table.a ** 2) and not table.is_circle:
                return point.x
            return point.y
        return point.x ** 2 / (table.a ** 2 - self.lam) + point.y ** 2 / (table.b ** 2 - self.lam) - 1.0


def lambda_of_ray(table: ConicTable, r: Ray) -> float:
    return lambda_of_line(table, r.alpha, r.p)


def lambda_of_line(table: ConicTable, alpha, p):
    """Vectorised invariant ``(a sin)^2 + (b cos)^2 - p^2``."""
    return (table.a * np.sin(alpha)) ** 2 + (table.b * np.cos(alpha)) ** 2 - np.asarray(p) ** 2


def reflect_lines(table: ConicTable, alpha, p):
    """Apply the billiard map to arrays of lines.

    Returns ``(alpha', p')`` with ``alpha'`` unwrapped so that the turning
    angle ``alpha' - alpha`` lies in ``[0, 2 pi)``.  Raises NoIntersection or
    Tangential; the exception carries the flat index of the first bad line
    in its ``s`` attribute.
    """
    alpha = np.asarray(alpha, dtype=float)
    p = np.asarray(p, dtype=float)
    a, b = table.a, table.b
    if table.is_circle:
        half_chord_sq = a * a - p * p
        _check_chords(half_chord_sq, a)
        return alpha + 2.0 * np.arccos(p / a), p.copy()
    return _reflect_general(a, b, alpha, p)


def reflect_lines_geometric(table: ConicTable, alpha, p):
    """Reflection by explicit boundary intersection, also for circles."""
    return _reflect_general(table.a, table.b, np.asarray(alpha, float), np.asarray(p, float))


def _check_chords(half_chord_sq, scale):
    bad = half_chord_sq < -GRAZE_TOL * scale * scale
    if np.any(bad):
        i = int(np.flatnonzero(np.ravel(bad))[0])
        raise NoIntersection("ray misses the table", s=i)
    graze = half_chord_sq <= GRAZE_TOL * scale * scale
    if np.any(graze):
        i = int(np.flatnonzero(np.ravel(graze))[0])
        raise Tangential("ray grazes the boundary", s=i)


def _reflect_general(a, b, alpha, p):
    ca, sa = np.cos(alpha), np.sin(alpha)
    fx, fy = p * sa, -p * ca
    ia2, ib2 = 1.0 / (a * a), 1.0 / (b * b)
    qa = ca * ca * ia2 + sa * sa * ib2
    qb = fx * ca * ia2 + fy * sa * ib2
    qc = fx * fx * ia2 + fy * fy * ib2 - 1.0
    disc = qb * qb - qa * qc
    _check_chords(disc / (qa * qa), a)
    t = (-qb + np.sqrt(disc)) / qa
    qx, qy = fx + t * ca, fy + t * sa
    nx, ny = qx * ia2, qy * ib2
    norm = np.hypot(nx, ny)
    nx, ny = nx / norm, ny / norm
    dn = ca * nx + sa * ny
    dx, dy = ca - 2.0 * dn * nx, sa - 2.0 * dn * ny
    turn = np.mod(np.arctan2(dy, dx) - alpha, TWO_PI)
    new_alpha = alpha + turn
    new_p = qx * np.sin(new_alpha) - qy * np.cos(new_alpha)
    return new_alpha, new_p


def reflect(table: ConicTable, r: Ray) -> Ray:
    alpha, p = reflect_lines(table, r.alpha, r.p)
    return Ray(float(alpha), float(p))


def reflect_n(table: ConicTable, r: Ray, n: int) -> Ray:
    if n < 0:
        raise ValueError("n must be non-negative")
    alpha, p = reflect_lines_n(table, r.alpha, r.p, n)
    return Ray(float(alpha), float(p))


def reflect_lines_n(table: ConicTable, alpha, p, n: int):
    alpha = np.asarray(alpha, dtype=float)
    p = np.asarray(p, dtype=float)
    for step in range(n):
        try:
            alpha, p = reflect_lines(table, alpha, p)
        except NoIntersection as exc:
            exc.step = step + 1
            raise
    return alpha, p


def confocal_through(table: ConicTable, O: Point) -> tuple[ConfocalParam, ConfocalParam]:
    """The confocal ellipse and hyperbola through an interior point."""
    if not table.contains(O):
        raise OutsidePoint(f"source {O} is not inside the table")
    if table.is_focal(O):
        raise FocusPoint(f"source {O} is a focus")
    return _confocal_pair(table, O)


def _confocal_pair(table: ConicTable, O: Point):
    a2, b2 = table.a ** 2, table.b ** 2
    x0, y0 = O.x, O.y
    tol = FOCUS_TOL * table.a
    if table.is_circle:
        # concentric circle and the line through the centre
        return ConfocalParam(a2 - x0 * x0 - y0 * y0, ELLIPSE), ConfocalParam(a2, AXIS)
    if abs(y0) <= tol and abs(x0) <= tol:
        # the centre: the foci segment and the minor axis
        return ConfocalParam(b2, FOCI_SEGMENT), ConfocalParam(a2, AXIS)
    if abs(y0) <= tol:
        inner = a2 - x0 * x0
        if abs(x0) < table.c:
            return ConfocalParam(b2, FOCI_SEGMENT), ConfocalParam(inner, HYPERBOLA)
        return ConfocalParam(inner, ELLIPSE), ConfocalParam(b2, AXIS)
    if abs(x0) <= tol:
        return ConfocalParam(b2 - y0 * y0, ELLIPSE), ConfocalParam(a2, AXIS)
    s = a2 + b2 - x0 * x0 - y0 * y0
    q = a2 * b2 - x0 * x0 * b2 - y0 * y0 * a2
    root = math.sqrt(max(s * s - 4.0 * q, 0.0))
    # stable pair: larger-magnitude root first, product for the other
    big = 0.5 * (s + math.copysign(root, s))
    small = q / big if big != 0 else 0.0
    lo, hi = sorted((big, small))
    return ConfocalParam(lo, ELLIPSE), ConfocalParam(hi, HYPERBOLA)


def confocal_hyperbola_outside(table: ConicTable, O: Point) -> ConfocalParam:
    """Confocal hyperbola (or axis) through an exterior point."""
    if table.contains(O):
        raise ValueError("point is inside the table")
    return _confocal_pair(table, O)[1]


def _axis_direction(table: ConicTable, O: Point, param: ConfocalParam) -> float:
    if table.is_circle:
        return math.atan2(O.y, O.x)
    if math.isclose(param.lam, table.a ** 2):
        return math.pi / 2
    return 0.0


def tangent_rays_at(table: ConicTable, O: Point) -> list[tuple[Ray, ConfocalParam]]:
    """Four rays through ``O`` tangent to the confocal conics through ``O``.

    Each entry pairs the ray with the parameter of its conic.  Rays along a
    degenerate conic (an axis or the focal segment) run along that axis.
    """
    pair = confocal_through(table, O)
    out = []
    for param in pair:
        if param.kind in (AXIS, FOCI_SEGMENT):
            theta = _axis_direction(table, O, param)
        else:
            gx = O.x / (table.a ** 2 - param.lam)
            gy = O.y / (table.b ** 2 - param.lam)
            theta = math.atan2(gx, -gy)
        for alpha in (theta, theta + math.pi):
            out.append((Ray.through(O, alpha), param))
    return out


def tangency_point(table: ConicTable, r: Ray, param: ConfocalParam) -> Point:
    """Touching point of a ray with the non-degenerate conic ``C_lambda``."""
    if param.kind in (AXIS, FOCI_SEGMENT):
        raise NotTangent("degenerate conic has no tangency point")
    A1 = table.a ** 2 - param.lam
    B1 = table.b ** 2 - param.lam
    ca, sa = math.cos(r.alpha), math.sin(r.alpha)
    fx, fy = r.p * sa, -r.p * ca
    qa = ca * ca / A1 + sa * sa / B1
    qb = fx * ca / A1 + fy * sa / B1
    qc = fx * fx / A1 + fy * fy / B1 - 1.0
    if qa == 0.0:
        raise NotTangent("ray is parallel to an asymptote")
    # the invariant is far better conditioned than the discriminant on thin conics
    miss = lambda_of_ray(table, r) - param.lam
    if abs(miss) > TANGENCY_TOL * table.a ** 2:
        raise NotTangent(f"ray is not tangent (lambda off by {miss:.3g})")
    t = -qb / qa
    return Point(fx + t * ca, fy + t * sa)


def reflect_series(table: ConicTable, alpha, p):
    """Billiard map on Taylor series of ``(alpha, p)`` in a family parameter.

    Same branch conventions as :func:`reflect_lines`; the returned series carry
    exact derivatives of the reflected family.
    """
    a, b = table.a, table.b
    if table.is_circle:
        _check_chords(a * a - p.value ** 2, a)
        return alpha + 2.0 * jets.arccos(p / a), p
    sa, ca = jets.sincos(alpha)
    fx, fy = p * sa, -(p * ca)
    ia2, ib2 = 1.0 / (a * a), 1.0 / (b * b)
    qa = ca * ca * ia2 + sa * sa * ib2
    qb = fx * ca * ia2 + fy * sa * ib2
    qc = fx * fx * ia2 + fy * fy * ib2 - 1.0
    disc = qb * qb - qa * qc
    _check_chords(disc.value / qa.value ** 2, a)
    t = (jets.sqrt(disc) - qb) / qa
    qx, qy = fx + t * ca, fy + t * sa
    nx, ny = qx * ia2, qy * ib2
    norm = jets.sqrt(nx * nx + ny * ny)
    nx, ny = nx / norm, ny / norm
    dn = ca * nx + sa * ny
    dx, dy = ca - 2.0 * dn * nx, sa - 2.0 * dn * ny
    turn = np.mod(np.arctan2(dy.value, dx.value) - alpha.value, TWO_PI)
    new_alpha = jets.atan2(dy, dx, value=alpha.value + turn)
    sn, cn = jets.sincos(new_alpha)
    return new_alpha, qx * sn - qy * cn


def reflect_series_n(table: ConicTable, alpha, p, n: int):
    for step in range(n):
        try:
            alpha, p = reflect_series(table, alpha, p)
        except NoIntersection as exc:
            exc.step = step + 1
            raise
    return alpha, p
